#include "magictrap/stark.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "magictrap/angular.hpp"
#include "magictrap/kernels.hpp"

namespace magictrap {
namespace {

using phys::kEA0;
using phys::kHbar;
using phys::kPlanck;
using phys::kTwoPi;

std::string hz_text(double hz) {
  std::ostringstream s;
  s.precision(9);
  s << hz << " Hz";
  return s.str();
}

double two_photon_energy(double omega, double delta, TppMode mode) {
  if (mode == TppMode::kApprox) return -kHbar * omega * omega / (4.0 * delta);
  // delta - sgn(delta) sqrt(W^2 + delta^2), rationalized to avoid cancellation when |W| << |delta|.
  const double root = std::hypot(omega, delta);
  return -0.5 * kHbar * std::copysign(omega * omega / (std::abs(delta) + root), delta);
}

}  // namespace

void TrapSpectrum::validate() const {
  if (!(total_intensity >= 0)) throw DomainError("negative trap intensity");
  if (components.empty()) throw DomainError("trap spectrum has no components");
  double norm = 0.0;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const TrapComponent& c = components[i];
    if (!(c.angular_frequency > 0)) throw DomainError("trap component frequency must be positive");
    if (!(c.amplitude_fraction > 0 && c.amplitude_fraction <= 1)) throw DomainError("amplitude fraction outside (0, 1]");
    for (std::size_t j = 0; j < i; ++j) {
      if (components[j].angular_frequency == c.angular_frequency) throw DomainError("trap component frequencies must differ");
    }
    norm += c.amplitude_fraction * c.amplitude_fraction;
  }
  if (std::abs(norm - 1.0) > 1e-12) throw DomainError("trap amplitude fractions are not normalized");
}

GroundStatePair make_pair(const AtomDataset& ds, int m1, int m2) {
  return {ds.ground_state(ds.two_f_low(), 2 * m1), ds.ground_state(ds.two_f_high(), 2 * m2)};
}

double field_amplitude(double intensity, double fraction) {
  if (!(intensity >= 0)) throw DomainError("negative intensity");
  return fraction * std::sqrt(2.0 * intensity / (phys::kSpeedOfLight * phys::kEpsilon0));
}

StarkModel::StarkModel(const AtomDataset& ds, GroundStatePair pair, int excited_level, StarkOptions options)
    : ds_(&ds), pair_(pair), excited_(excited_level), opt_(options) {
  if (pair_.g1.level != ds.ground() || pair_.g2.level != ds.ground()) throw DomainError("pair states must be ground states");
  if (pair_.g2.two_f != pair_.g1.two_f + 2) throw DomainError("pair must be (F_low, F_high)");
  if (excited_ >= 0) {
    const FineLevel& e = ds.level(excited_);
    if (excited_ == ds.ground() || (e.l != 0 && e.l != 2)) throw DomainError("excited manifold must be an S or D level");
  }
  build(0);
  build(1);
}

void StarkModel::build(int which) {
  const AtomDataset& ds = *ds_;
  const HyperfineState g = state(which);
  StateTables& st = tables_[which];
  for (int k : ds.one_photon_levels) {
    for (int two_fi : ds.allowed_two_f(k)) {
      if (std::abs(g.two_m) > two_fi) continue;
      const HyperfineState i{k, two_fi, g.two_m};
      const double d = dipole_element(ds, i, g, 0) * kEA0;
      if (d == 0.0) continue;
      st.opp.w.push_back(d * d);
      st.opp.pole.push_back(transition_angular_frequency(ds, g, i));
      st.opp.level.push_back(k);
    }
  }
  if (excited_ < 0) return;
  std::vector<int> mids;
  for (int k = 0; k < static_cast<int>(ds.levels.size()); ++k) {
    if (k != excited_ && k != ds.ground() && ds.has_dipole(k, ds.ground()) && ds.has_dipole(k, excited_)) mids.push_back(k);
  }
  for (int two_fe : ds.allowed_two_f(excited_)) {
    if (std::abs(g.two_m) > two_fe) continue;
    const HyperfineState e{excited_, two_fe, g.two_m};
    TppChannel ch;
    ch.two_f_e = two_fe;
    ch.omega_eg = transition_angular_frequency(ds, g, e);
    for (int k : mids) {
      for (int two_fi : ds.allowed_two_f(k)) {
        if (std::abs(g.two_m) > two_fi) continue;
        const HyperfineState i{k, two_fi, g.two_m};
        const double c = dipole_element(ds, i, g, 0) * dipole_element(ds, e, i, 0) * kEA0 * kEA0;
        if (c == 0.0) continue;
        ch.sums.w.push_back(c);
        ch.sums.pole.push_back(transition_angular_frequency(ds, g, i));
        ch.sums.level.push_back(k);
      }
    }
    st.tpp.push_back(std::move(ch));
  }
}

void StarkModel::guard(const Table& t, double omega) const {
  const double band = kTwoPi * opt_.guard_hz;
  for (std::size_t i = 0; i < t.pole.size(); ++i) {
    if (std::abs(t.pole[i] - omega) < band) {
      throw ResonanceError("trap frequency " + hz_text(omega / kTwoPi) + " within the guard band of a transition to " +
                           ds_->level(t.level[i]).key());
    }
  }
}

double StarkModel::one_photon(int which, const TrapSpectrum& spectrum, std::vector<double>* by_component) const {
  const Table& t = tables_[which].opp;
  const double s = opt_.counter_rotating == CounterRotating::kStandard ? 1.0 : -1.0;
  const auto kernel = kernels::resonance_sum();
  double total = 0.0;
  if (by_component) by_component->clear();
  for (const TrapComponent& c : spectrum.components) {
    guard(t, c.angular_frequency);
    double sum = 0.0;
    kernel(t.w.data(), t.pole.data(), t.w.size(), &c.angular_frequency, 1, s, &sum);
    const double e = field_amplitude(spectrum.total_intensity, c.amplitude_fraction);
    const double shift = -e * e / (4.0 * kHbar * kPlanck) * sum;
    if (by_component) by_component->push_back(shift);
    total += shift;
  }
  return total;
}

double StarkModel::two_photon(int which, const TrapSpectrum& spectrum, std::vector<TwoPhotonTerm>* terms,
                              bool* near) const {
  if (excited_ < 0) return 0.0;
  const std::size_t nc = spectrum.components.size();
  std::vector<double> omegas(nc), fields(nc), sums(nc);
  for (std::size_t a = 0; a < nc; ++a) {
    omegas[a] = spectrum.components[a].angular_frequency;
    fields[a] = field_amplitude(spectrum.total_intensity, spectrum.components[a].amplitude_fraction);
  }
  const auto kernel = kernels::resonance_sum();
  const int two_fg = state(which).two_f;
  const double band = kTwoPi * opt_.guard_hz;
  double total = 0.0;
  if (terms) terms->clear();
  for (const TppChannel& ch : tables_[which].tpp) {
    for (double w : omegas) guard(ch.sums, w);
    kernel(ch.sums.w.data(), ch.sums.pole.data(), ch.sums.w.size(), omegas.data(), nc, 0.0, sums.data());
    for (std::size_t a = 0; a < nc; ++a) {
      for (std::size_t b = a; b < nc; ++b) {
        if (a == b && opt_.degenerate_selection_gate && ch.two_f_e != two_fg) continue;
        const double rabi = fields[a] * fields[b] / (kHbar * kHbar) * 0.5 * (sums[a] + sums[b]);
        const double delta = ch.omega_eg - (omegas[a] + omegas[b]);
        if (std::abs(delta) < band) {
          throw ResonanceError("two-photon detuning below the guard band for " + ds_->level(excited_).key() +
                               " F=" + format_doubled(ch.two_f_e));
        }
        if (near && std::abs(delta) < 10.0 * std::abs(rabi)) *near = true;
        const double shift = two_photon_energy(rabi, delta, opt_.tpp_mode) / kPlanck;
        total += shift;
        if (terms) terms->push_back({ch.two_f_e, a, b, rabi, delta, shift});
      }
    }
  }
  return total;
}

ShiftBreakdown StarkModel::evaluate(const TrapSpectrum& spectrum) const {
  spectrum.validate();
  ShiftBreakdown b;
  b.one_photon_g1 = one_photon(0, spectrum, &b.one_photon_by_component_g1);
  b.one_photon_g2 = one_photon(1, spectrum, &b.one_photon_by_component_g2);
  b.two_photon_g1 = two_photon(0, spectrum, &b.two_photon_terms_g1, &b.near_two_photon_resonance);
  b.two_photon_g2 = two_photon(1, spectrum, &b.two_photon_terms_g2, &b.near_two_photon_resonance);
  b.dls_total = (b.one_photon_g2 + b.two_photon_g2) - (b.one_photon_g1 + b.two_photon_g1);
  return b;
}

std::vector<double> StarkModel::dls_monochromatic(const std::vector<double>& nu_hz, double intensity) const {
  const std::size_t m = nu_hz.size();
  std::vector<double> omegas(m), out(m, 0.0), sums(m);
  for (std::size_t j = 0; j < m; ++j) omegas[j] = kTwoPi * nu_hz[j];
  const double e = field_amplitude(intensity);
  const double s = opt_.counter_rotating == CounterRotating::kStandard ? 1.0 : -1.0;
  const auto kernel = kernels::resonance_sum();
  const double band = kTwoPi * opt_.guard_hz;
  for (int which = 0; which < 2; ++which) {
    const double sign = which == 0 ? -1.0 : 1.0;
    const StateTables& st = tables_[which];
    for (double w : omegas) guard(st.opp, w);
    kernel(st.opp.w.data(), st.opp.pole.data(), st.opp.w.size(), omegas.data(), m, s, sums.data());
    for (std::size_t j = 0; j < m; ++j) out[j] += sign * (-e * e / (4.0 * kHbar * kPlanck) * sums[j]);
    const int two_fg = state(which).two_f;
    for (const TppChannel& ch : st.tpp) {
      if (opt_.degenerate_selection_gate && ch.two_f_e != two_fg) continue;
      for (double w : omegas) guard(ch.sums, w);
      kernel(ch.sums.w.data(), ch.sums.pole.data(), ch.sums.w.size(), omegas.data(), m, 0.0, sums.data());
      for (std::size_t j = 0; j < m; ++j) {
        const double rabi = e * e / (kHbar * kHbar) * sums[j];
        const double delta = ch.omega_eg - 2.0 * omegas[j];
        if (std::abs(delta) < band) {
          throw ResonanceError("two-photon detuning below the guard band at " + hz_text(nu_hz[j]));
        }
        out[j] += sign * two_photon_energy(rabi, delta, opt_.tpp_mode) / kPlanck;
      }
    }
  }
  return out;
}

double one_photon_shift(const AtomDataset& ds, const HyperfineState& state, const TrapSpectrum& spectrum,
                        const StarkOptions& options) {
  spectrum.validate();
  if (state.level != ds.ground()) throw DomainError("one-photon shift is defined for ground states");
  const int other = state.two_f == ds.two_f_low() ? ds.two_f_high() : ds.two_f_low();
  const int two_m_other = std::clamp(state.two_m, -other, other);
  GroundStatePair pair = state.two_f == ds.two_f_low()
                             ? GroundStatePair{state, ds.ground_state(other, two_m_other)}
                             : GroundStatePair{ds.ground_state(other, two_m_other), state};
  const StarkModel model(ds, pair, -1, options);
  return model.one_photon(state.two_f == ds.two_f_low() ? 0 : 1, spectrum);
}

double tpp_rabi(const AtomDataset& ds, const HyperfineState& ground, const HyperfineState& excited,
                const TrapComponent& comp1, const TrapComponent& comp2, double total_intensity,
                const StarkOptions& options, bool force_general) {
  const FineLevel& e = ds.level(excited.level);
  if (ground.level != ds.ground() || excited.level == ds.ground() || (e.l != 0 && e.l != 2)) {
    throw DomainError("two-photon coupling needs a ground state and an S or D excited state");
  }
  if (excited.two_m != ground.two_m) return 0.0;  // both photons are pi polarized
  const bool degenerate = !force_general && comp1.angular_frequency == comp2.angular_frequency &&
                          comp1.amplitude_fraction == comp2.amplitude_fraction;
  if (degenerate && options.degenerate_selection_gate && excited.two_f != ground.two_f) return 0.0;
  const double band = kTwoPi * options.guard_hz;
  const double e1 = field_amplitude(total_intensity, comp1.amplitude_fraction);
  const double e2 = field_amplitude(total_intensity, comp2.amplitude_fraction);
  double total = 0.0;
  for (int k = 0; k < static_cast<int>(ds.levels.size()); ++k) {
    if (k == excited.level || k == ds.ground() || !ds.has_dipole(k, ds.ground()) || !ds.has_dipole(k, excited.level)) continue;
    for (int two_fi : ds.allowed_two_f(k)) {
      if (std::abs(ground.two_m) > two_fi) continue;
      const HyperfineState i{k, two_fi, ground.two_m};
      const double d1 = dipole_element(ds, i, ground, 0) * kEA0;
      const double d2 = dipole_element(ds, excited, i, 0) * kEA0;
      if (d1 == 0.0 || d2 == 0.0) continue;
      const double wi = transition_angular_frequency(ds, ground, i);
      const double delta1 = wi - comp1.angular_frequency;
      const double delta2 = wi - comp2.angular_frequency;
      if (std::abs(delta1) < band || std::abs(delta2) < band) {
        throw ResonanceError("one-photon detuning below the guard band for " + ds.level(k).key());
      }
      const double o1 = e1 * d1 / kHbar, o2 = e2 * d2 / kHbar;  // photon 1 below, photon 2 above
      const double o1b = e2 * d1 / kHbar, o2b = e1 * d2 / kHbar;
      if (degenerate) {
        total += o1 * o2 / delta1;
      } else {
        total += 0.5 * (o1 * o2 / delta1 + o1b * o2b / delta2);
      }
    }
  }
  return total;
}

double two_photon_shift(const AtomDataset& ds, const HyperfineState& state, const TrapSpectrum& spectrum,
                        int excited_level, const StarkOptions& options) {
  spectrum.validate();
  const bool low = state.two_f == ds.two_f_low();
  const int other = low ? ds.two_f_high() : ds.two_f_low();
  const HyperfineState partner = ds.ground_state(other, std::clamp(state.two_m, -other, other));
  const StarkModel model(ds, low ? GroundStatePair{state, partner} : GroundStatePair{partner, state}, excited_level, options);
  return model.two_photon(low ? 0 : 1, spectrum);
}

ShiftBreakdown total_dls(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                         int excited_level, const StarkOptions& options) {
  return StarkModel(ds, pair, excited_level, options).evaluate(spectrum);
}

double trap_depth_uk(const ShiftBreakdown& b) {
  const double mean_hz = 0.5 * (b.one_photon_g1 + b.two_photon_g1 + b.one_photon_g2 + b.two_photon_g2);
  return kPlanck * mean_hz / phys::kBoltzmann * 1e6;
}

double trap_depth_uk(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                     int excited_level, const StarkOptions& options) {
  return trap_depth_uk(total_dls(ds, pair, spectrum, excited_level, options));
}

TrapSpectrum monochromatic_spectrum(double frequency_hz, double total_intensity) {
  TrapSpectrum s{{{kTwoPi * frequency_hz, 1.0}}, total_intensity};
  s.validate();
  return s;
}

std::vector<double> sideband_power_fractions(double modulation_depth, int max_order) {
  if (!(modulation_depth >= 0)) throw DomainError("modulation depth must be non-negative");
  if (max_order < 0) throw DomainError("max_order must be non-negative");
  std::vector<double> p;
  for (int n = 0; n <= max_order; ++n) {
    const double j = std::cyl_bessel_j(static_cast<double>(n), modulation_depth);
    p.push_back(j * j);
  }
  return p;
}

TrapSpectrum sideband_spectrum(double carrier_hz, double modulation_hz, double modulation_depth,
                               double total_intensity, int max_order) {
  const std::vector<double> power = sideband_power_fractions(modulation_depth, max_order);
  double kept = power[0];
  for (int n = 1; n <= max_order; ++n) kept += 2.0 * power[static_cast<std::size_t>(n)];
  if (1.0 - kept > 0.01) throw DomainError("sideband truncation discards more than 1% of the power");
  if (max_order > 0 && modulation_depth > 0 && !(modulation_hz > 0)) throw DomainError("modulation frequency must be positive");
  TrapSpectrum s;
  s.total_intensity = total_intensity;
  for (int n = -max_order; n <= max_order; ++n) {
    const double pw = power[static_cast<std::size_t>(std::abs(n))];
    if (pw == 0.0) continue;
    s.components.push_back({kTwoPi * (carrier_hz + n * modulation_hz), std::sqrt(pw / kept)});
  }
  s.validate();
  return s;
}

TrapSpectrum crossed_spectrum(double center_hz, double beam_splitting_hz, double total_intensity) {
  if (!(beam_splitting_hz > 0)) throw DomainError("beam splitting must be positive");
  const double a = std::sqrt(0.5);
  TrapSpectrum s{{{kTwoPi * (center_hz - 0.5 * beam_splitting_hz), a}, {kTwoPi * (center_hz + 0.5 * beam_splitting_hz), a}},
                 total_intensity};
  s.validate();
  return s;
}

}  // namespace magictrap
