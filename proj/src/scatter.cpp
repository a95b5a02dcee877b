#include "magictrap/scatter.hpp"

#include <cmath>
#include <cstdlib>

#include "magictrap/angular.hpp"

namespace magictrap {
namespace {

using phys::kHbar;
using phys::kTwoPi;

double emission_prefactor(double omega) {
  const double c = phys::kSpeedOfLight;
  return omega * omega * omega / (3.0 * phys::kPi * phys::kEpsilon0 * kHbar * c * c * c);
}

// Second-order amplitude in (e a0)^2 / (rad/s) for pi absorption at omega and emission with
// polarization q = m_i - m_f, summed over every intermediate hyperfine sublevel.
double kh_amplitude(const AtomDataset& ds, const HyperfineState& g, const HyperfineState& f, double omega,
                    double guard) {
  const int q2 = g.two_m - f.two_m;
  if (std::abs(q2) > 2) return 0.0;
  const int q = q2 / 2;
  double amp = 0.0;
  for (int k : ds.one_photon_levels) {
    for (int two_fi : ds.allowed_two_f(k)) {
      // Absorb first: intermediate keeps m_g.
      if (std::abs(g.two_m) <= two_fi) {
        const HyperfineState i{k, two_fi, g.two_m};
        const double wig = transition_angular_frequency(ds, g, i);
        if (std::abs(wig - omega) < guard) {
          throw ResonanceError("one-photon detuning below the guard band for " + ds.level(k).key());
        }
        amp += dipole_element(ds, f, i, q) * dipole_element(ds, i, g, 0) / (wig - omega);
      }
      // Emit first: intermediate already carries m_f.
      if (std::abs(f.two_m) <= two_fi) {
        const HyperfineState i{k, two_fi, f.two_m};
        const double wig = transition_angular_frequency(ds, g, i);
        amp += dipole_element(ds, f, i, 0) * dipole_element(ds, i, g, q) / (wig + omega);
      }
    }
  }
  return amp;
}

}  // namespace

Linewidth natural_linewidth(const AtomDataset& ds, int level) {
  const FineLevel& up = ds.level(level);
  double gamma = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < ds.levels.size(); ++k) {
    const int lo = static_cast<int>(k);
    if (lo == level || !ds.has_dipole(level, lo)) continue;
    const double dnu = wavenumber_to_hz(up.energy_cm1 - ds.level(lo).energy_cm1);
    if (dnu <= 0) continue;
    const double d = ds.reduced(level, lo) * phys::kEA0;
    gamma += emission_prefactor(kTwoPi * dnu) * d * d / (up.two_j + 1);
    any = true;
  }
  if (!any) throw DomainError(up.key() + " has no decay channel in the dataset");
  return {gamma, gamma / kTwoPi};
}

double raman_rate_channel(const AtomDataset& ds, const HyperfineState& initial, const HyperfineState& final_state,
                          const TrapSpectrum& spectrum, const StarkOptions& options) {
  if (initial.level != ds.ground() || final_state.level != ds.ground()) {
    throw DomainError("Raman channels connect ground sublevels only");
  }
  if (initial.two_f == final_state.two_f && initial.two_m == final_state.two_m) return 0.0;
  spectrum.validate();
  const double guard = kTwoPi * options.guard_hz;
  double rate = 0.0;
  for (const TrapComponent& c : spectrum.components) {
    const double e0 = field_amplitude(spectrum.total_intensity, c.amplitude_fraction);
    const double amp = kh_amplitude(ds, initial, final_state, c.angular_frequency, guard) * phys::kEA0 *
                       phys::kEA0 * e0 / (2.0 * kHbar);
    rate += emission_prefactor(c.angular_frequency) * amp * amp;
  }
  return rate;
}

double raman_rate_state(const AtomDataset& ds, const HyperfineState& state, const TrapSpectrum& spectrum,
                        const StarkOptions& options) {
  double rate = 0.0;
  for (int two_f : {ds.two_f_low(), ds.two_f_high()}) {
    for (int two_m = -two_f; two_m <= two_f; two_m += 2) {
      rate += raman_rate_channel(ds, state, {ds.ground(), two_f, two_m}, spectrum, options);
    }
  }
  return rate;
}

PairRates raman_rates(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                      const StarkOptions& options) {
  return {raman_rate_state(ds, pair.g1, spectrum, options), raman_rate_state(ds, pair.g2, spectrum, options)};
}

double raman_rate_1p(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                     const StarkOptions& options) {
  return raman_rates(ds, pair, spectrum, options).max();
}

PairRates scatter_rates_2p(const StarkModel& model, const TrapSpectrum& spectrum) {
  if (model.excited_level() < 0) throw DomainError("two-photon scattering needs an excited manifold");
  const double gamma = natural_linewidth(model.dataset(), model.excited_level()).gamma;
  const ShiftBreakdown b = model.evaluate(spectrum);
  auto population = [](const std::vector<TwoPhotonTerm>& terms) {
    double p = 0.0;
    for (const TwoPhotonTerm& t : terms) {
      const double r = t.rabi / (2.0 * t.detuning);
      p += r * r;
    }
    return p;
  };
  return {gamma * population(b.two_photon_terms_g1), gamma * population(b.two_photon_terms_g2)};
}

double scatter_rate_2p(const StarkModel& model, const TrapSpectrum& spectrum) {
  return scatter_rates_2p(model, spectrum).max();
}

T1Bound t1_bound(const std::vector<double>& rates_hz) {
  double total = 0.0;
  for (double r : rates_hz) {
    if (!(r >= 0)) throw DomainError("scattering rates must be non-negative");
    total += r;
  }
  if (total == 0.0) return {0.0, true};
  return {1.0 / total, false};
}

}  // namespace magictrap
