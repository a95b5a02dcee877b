#include "magictrap/coherence.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace magictrap {
namespace {

using phys::kTwoPi;

constexpr std::uint64_t kChunk = 65536;

// Density in u = sqrt(x): returns p(x(u)) dx/du and the exponential rate c in exp(-c u).
double density_u(double u, const ThermalEnsemble& e) {
  const double a = e.a_const;
  if (e.density == DlsDensity::kPublished) return a * a * a * a / 6.0 * u * u * u * std::exp(-a * u);
  return 4.0 * a * a * a * u * u * std::exp(-2.0 * a * u);
}

double decay_rate(const ThermalEnsemble& e) {
  return e.density == DlsDensity::kPublished ? e.a_const : 2.0 * e.a_const;
}

template <class F>
double integrate_segments(F f, double u_max, std::size_t n) {
  double total = 0.0;
  double lo = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    const double hi = u_max * std::sqrt(static_cast<double>(k) / static_cast<double>(n));
    double err = 0.0;
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, lo, hi, 4, 1e-12, &err);
    lo = hi;
  }
  return total;
}

void check(const ThermalEnsemble& e) {
  if (!(e.temperature_k > 0)) throw DomainError("temperature must be positive");
  if (!(e.k_e > 0)) throw DomainError("k_E must be positive (a DLS maximum is not modelled)");
}

}  // namespace

const char* density_name(DlsDensity d) { return d == DlsDensity::kPublished ? "published" : "boltzmann"; }

ThermalEnsemble make_ensemble(double temperature_k, double k_e, double delta0, DlsDensity density) {
  ThermalEnsemble e;
  e.temperature_k = temperature_k;
  e.k_e = k_e;
  e.delta0 = delta0;
  e.density = density;
  check(e);
  e.a_const = 1.0 / (std::sqrt(k_e) * temperature_k * 1e6);
  return e;
}

double boltzmann_pdf(double energy_j, double temperature_k) {
  if (!(temperature_k > 0)) throw DomainError("temperature must be positive");
  if (energy_j < 0) throw DomainError("energy must be non-negative");
  const double kt = phys::kBoltzmann * temperature_k;
  return energy_j * energy_j / (2.0 * kt * kt * kt) * std::exp(-energy_j / kt);
}

double k_E_from_k_I(double k_i, double i0, double trap_depth_uk) {
  if (trap_depth_uk == 0.0) throw DomainError("trap depth is zero");
  return i0 * i0 / (trap_depth_uk * trap_depth_uk) * k_i;
}

double dls_pdf(double delta_dls, const ThermalEnsemble& ens) {
  check(ens);
  const double x = delta_dls - ens.delta0;
  if (x < 0) throw DomainError("DLS value below delta0");
  const double a = ens.a_const, s = std::sqrt(x);
  if (ens.density == DlsDensity::kPublished) return a * a * a * a / 12.0 * x * std::exp(-a * s);
  return 2.0 * a * a * a * s * std::exp(-2.0 * a * s);
}

double RamseyPoint::amplitude() const { return std::hypot(alpha, beta); }

RamseyPoint ramsey_components(double t, const ThermalEnsemble& ens) {
  check(ens);
  if (t < 0) throw DomainError("Ramsey time must be non-negative");
  // exp(-c u) at u_max is ~4e-18, leaving a polynomial-weighted tail far below 1e-12.
  const double u_max = 40.0 / decay_rate(ens);
  const double cycles = u_max * u_max * t;
  const std::size_t n = std::max<std::size_t>(8, static_cast<std::size_t>(std::ceil(2.0 * cycles)) + 1);
  RamseyPoint p;
  p.alpha = integrate_segments([&](double u) { return density_u(u, ens) * std::cos(kTwoPi * u * u * t); }, u_max, n);
  p.beta = integrate_segments([&](double u) { return density_u(u, ens) * std::sin(kTwoPi * u * u * t); }, u_max, n);
  return p;
}

double ramsey_signal(double t, double delta_pp, const ThermalEnsemble& ens) {
  const RamseyPoint p = ramsey_components(t, ens);
  return p.alpha * std::cos(kTwoPi * delta_pp * t) + p.beta * std::sin(kTwoPi * delta_pp * t);
}

RamseyEnvelope ramsey_envelope(const ThermalEnsemble& ens, const std::vector<double>& times) {
  RamseyEnvelope env;
  env.times = times;
  for (double t : times) {
    const RamseyPoint p = ramsey_components(t, ens);
    env.alpha.push_back(p.alpha);
    env.beta.push_back(p.beta);
    env.amplitude.push_back(p.amplitude());
  }
  env.t2 = coherence_time(ens);
  return env;
}

double coherence_time(const ThermalEnsemble& ens) {
  check(ens);
  const double target = std::exp(-1.0);
  const double scale = ens.a_const * ens.a_const;
  const double t_lo = 1e-4 * scale, t_hi = 1e6 * scale;
  const int per_decade = 10;
  const int points = 10 * per_decade;
  double prev_t = 0.0, prev_amp = 1.0;
  for (int k = 0; k <= points; ++k) {
    const double t = t_lo * std::pow(10.0, static_cast<double>(k) / per_decade);
    const double amp = ramsey_components(t, ens).amplitude();
    if (amp > prev_amp + 1e-9) throw ConvergenceError("Ramsey envelope is not monotone before its 1/e crossing");
    if (amp <= target) {
      double lo = prev_t, hi = t;
      while (hi - lo > 1e-7 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (ramsey_components(mid, ens).amplitude() > target) lo = mid;
        else hi = mid;
      }
      return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_amp = amp;
  }
  std::ostringstream s;
  s << "Ramsey envelope stays above 1/e over [" << t_lo << ", " << t_hi << "] s";
  throw ConvergenceError(s.str());
}

MonteCarloRamsey monte_carlo_ramsey(const ThermalEnsemble& ens, const std::vector<double>& times,
                                    std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  check(ens);
  if (samples < 2) throw DomainError("Monte-Carlo needs at least two samples");
  const std::size_t nt = times.size();
  const std::uint64_t chunks = (samples + kChunk - 1) / kChunk;
  // Per chunk: sum cos, sum cos^2, sum sin, sum sin^2 for every time.
  std::vector<std::vector<double>> acc(chunks, std::vector<double>(4 * nt, 0.0));
  const double t_uk = ens.temperature_k * 1e6;
  auto run_chunk = [&](std::uint64_t c) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(c & 0xffffffffu), static_cast<std::uint32_t>(c >> 32)};
    std::mt19937_64 rng(seq);
    std::gamma_distribution<double> energy(3.0, t_uk);
    const std::uint64_t n = std::min(kChunk, samples - c * kChunk);
    std::vector<double>& a = acc[c];
    for (std::uint64_t s = 0; s < n; ++s) {
      const double e = energy(rng);
      const double x = 0.25 * ens.k_e * e * e;
      for (std::size_t j = 0; j < nt; ++j) {
        const double ph = kTwoPi * x * times[j];
        const double co = std::cos(ph), si = std::sin(ph);
        a[4 * j] += co;
        a[4 * j + 1] += co * co;
        a[4 * j + 2] += si;
        a[4 * j + 3] += si * si;
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, chunks));
  if (threads <= 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t c = w; c < chunks; c += threads) run_chunk(c);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<double> total(4 * nt, 0.0);
  for (const auto& a : acc) {
    for (std::size_t k = 0; k < total.size(); ++k) total[k] += a[k];
  }
  MonteCarloRamsey out;
  out.samples = samples;
  const double n = static_cast<double>(samples);
  for (std::size_t j = 0; j < nt; ++j) {
    const double mc = total[4 * j] / n, ms = total[4 * j + 2] / n;
    const double vc = std::max(0.0, total[4 * j + 1] / n - mc * mc);
    const double vs = std::max(0.0, total[4 * j + 3] / n - ms * ms);
    out.alpha.push_back(mc);
    out.beta.push_back(ms);
    out.alpha_sigma.push_back(std::sqrt(vc / (n - 1.0)));
    out.beta_sigma.push_back(std::sqrt(vs / (n - 1.0)));
  }
  return out;
}

SensitivityBudget sensitivity_budget(const MagicSolution& solution, double k_m, double delta_nu_hz, double delta_i_rel,
                                     double delta_b_gauss) {
  SensitivityBudget b;
  b.frequency_hz = solution.k_nu * delta_nu_hz * delta_nu_hz;
  const double di = delta_i_rel * solution.i0;
  b.intensity_hz = solution.k_i * di * di;
  b.field_hz = k_m * delta_b_gauss * delta_b_gauss;
  return b;
}

}  // namespace magictrap
