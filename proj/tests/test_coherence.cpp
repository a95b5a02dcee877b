#include <doctest.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <functional>
#include <random>

#include "magictrap/coherence.hpp"
#include "support.hpp"

using namespace magictrap;

namespace {

constexpr double kTwoPi = phys::kTwoPi;
constexpr double kKe = 0.14432;  // Hz / uK^2

double integrate_upper(const std::function<double(double)>& f, double lo, double epsabs = 1e-14, double epsrel = 1e-12) {
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(4000);
  gsl_function g;
  g.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
  g.params = const_cast<std::function<double(double)>*>(&f);
  double result = 0.0, err = 0.0;
  gsl_integration_qagiu(&g, lo, epsabs, epsrel, 4000, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  return result;
}

double integrate_range(const std::function<double(double)>& f, double lo, double hi) {
  gsl_integration_workspace* ws = gsl_integration_workspace_alloc(20000);
  gsl_function g;
  g.function = [](double x, void* p) { return (*static_cast<const std::function<double(double)>*>(p))(x); };
  g.params = const_cast<std::function<double(double)>*>(&f);
  double result = 0.0, err = 0.0;
  gsl_integration_qag(&g, lo, hi, 1e-15, 1e-12, 20000, GSL_INTEG_GAUSS61, ws, &result, &err);
  gsl_integration_workspace_free(ws);
  return result;
}

// Ramsey components averaged over the Boltzmann energy law directly in E (in uK), x = k_E E^2 / 4.
RamseyPoint energy_space(double t, double t_uk, double k_e) {
  const auto pdf = [&](double e) { return e * e / (2.0 * t_uk * t_uk * t_uk) * std::exp(-e / t_uk); };
  const double hi = 80.0 * t_uk;
  RamseyPoint p;
  p.alpha = integrate_range([&](double e) { return pdf(e) * std::cos(kTwoPi * 0.25 * k_e * e * e * t); }, 0.0, hi);
  p.beta = integrate_range([&](double e) { return pdf(e) * std::sin(kTwoPi * 0.25 * k_e * e * e * t); }, 0.0, hi);
  return p;
}

}  // namespace

TEST_CASE("energy density of a harmonic thermal ensemble") {
  const double t = 2e-7;
  const double kt = phys::kBoltzmann * t;
  // Integrate in units of kT so the quadrature sees an O(1) scale.
  const double norm = integrate_upper([&](double u) { return kt * boltzmann_pdf(u * kt, t); }, 0.0, 0.0, 1e-12);
  CHECK(std::abs(norm - 1.0) < 1e-8);
  const double mean = integrate_upper([&](double u) { return kt * u * boltzmann_pdf(u * kt, t); }, 0.0, 0.0, 1e-12);
  CHECK(mean == doctest::Approx(3.0).epsilon(1e-8));
  CHECK_THROWS_AS(boltzmann_pdf(1e-30, 0.0), DomainError);
}

TEST_CASE("DLS densities are normalized") {
  for (DlsDensity d : {DlsDensity::kBoltzmann, DlsDensity::kPublished}) {
    for (double t_uk : {0.1, 0.2, 0.4, 3.0}) {
      const ThermalEnsemble ens = make_ensemble(t_uk * 1e-6, kKe, 1.5, d);
      const double norm = integrate_upper([&](double x) { return dls_pdf(x, ens); }, ens.delta0, 0.0, 1e-11);
      CHECK(std::abs(norm - 1.0) < 1e-8);
    }
  }
}

TEST_CASE("published density peaks at 4 / A^2") {
  const ThermalEnsemble ens = make_ensemble(2e-7, kKe, 0.0, DlsDensity::kPublished);
  const double mode = 4.0 / (ens.a_const * ens.a_const);
  const double h = 1e-4 * mode;
  CHECK(dls_pdf(mode, ens) > dls_pdf(mode - h, ens));
  CHECK(dls_pdf(mode, ens) > dls_pdf(mode + h, ens));
}

TEST_CASE("Boltzmann density is the push-forward of the energy law") {
  const double t = 3e-7;
  const ThermalEnsemble ens = make_ensemble(t, kKe);
  const double t_uk = t * 1e6;
  for (double e_uk : {0.05, 0.3, 1.1, 2.5}) {
    const double x = 0.25 * kKe * e_uk * e_uk;
    const double dxde = 0.5 * kKe * e_uk;
    const double pe = e_uk * e_uk / (2.0 * t_uk * t_uk * t_uk) * std::exp(-e_uk / t_uk);
    CHECK(dls_pdf(x, ens) == doctest::Approx(pe / dxde).epsilon(1e-12));
  }
  CHECK(ens.a_const == doctest::Approx(1.0 / (std::sqrt(kKe) * t_uk)).epsilon(1e-15));
}

TEST_CASE("Ramsey components at t = 0 are exact") {
  for (DlsDensity d : {DlsDensity::kBoltzmann, DlsDensity::kPublished}) {
    const RamseyPoint p = ramsey_components(0.0, make_ensemble(2e-7, kKe, 0.0, d));
    CHECK(std::abs(p.alpha - 1.0) < 1e-12);
    CHECK(std::abs(p.beta) < 1e-15);
  }
}

TEST_CASE("Ramsey components match an energy-space quadrature") {
  const double t = 2e-7;
  const ThermalEnsemble ens = make_ensemble(t, kKe);
  for (double time : {0.5, 5.0, 20.0, 60.0, 200.0}) {
    const RamseyPoint ours = ramsey_components(time, ens);
    const RamseyPoint ref = energy_space(time, t * 1e6, kKe);
    CHECK(std::abs(ours.alpha - ref.alpha) < 1e-9);
    CHECK(std::abs(ours.beta - ref.beta) < 1e-9);
  }
}

TEST_CASE("envelope is invariant under t -> t / lambda^2, A -> A / lambda") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> t_uk(0.05, 2.0), lam(0.3, 3.0), k(0.02, 1.0), frac(0.1, 3.0);
  for (DlsDensity d : {DlsDensity::kBoltzmann, DlsDensity::kPublished}) {
    for (int n = 0; n < 5; ++n) {
      const double temp = t_uk(rng) * 1e-6, l = lam(rng), ke = k(rng);
      const ThermalEnsemble base = make_ensemble(temp, ke, 0.0, d);
      // A is proportional to 1/T, so scaling T by lambda divides A by lambda.
      const ThermalEnsemble scaled = make_ensemble(l * temp, ke, 0.0, d);
      REQUIRE(scaled.a_const == doctest::Approx(base.a_const / l).epsilon(1e-12));
      const double t = frac(rng) * coherence_time(base);
      const double a = ramsey_components(t, base).amplitude();
      const double b = ramsey_components(t / (l * l), scaled).amplitude();
      CHECK(std::abs(a - b) <= 1e-6);
    }
  }
}

TEST_CASE("signal mixes the components through the pulse detuning") {
  const ThermalEnsemble ens = make_ensemble(2e-7, kKe);
  const RamseyPoint p = ramsey_components(10.0, ens);
  CHECK(ramsey_signal(10.0, 0.0, ens) == doctest::Approx(p.alpha).epsilon(1e-14));
  CHECK(ramsey_signal(10.0, 1.0 / 40.0, ens) == doctest::Approx(p.beta).epsilon(1e-12));
}

TEST_CASE("coherence time scales as 1 / (k_E T^2)") {
  for (DlsDensity d : {DlsDensity::kBoltzmann, DlsDensity::kPublished}) {
    const double ref = coherence_time(make_ensemble(2e-7, kKe, 0.0, d));
    const double lo = coherence_time(make_ensemble(1e-7, kKe, 0.0, d));
    const double hi = coherence_time(make_ensemble(4e-7, kKe, 0.0, d));
    CHECK(std::abs(lo * 1e-14 / (ref * 4e-14) - 1.0) < 1e-3);
    CHECK(std::abs(hi * 16e-14 / (ref * 4e-14) - 1.0) < 1e-3);
    const double doubled = coherence_time(make_ensemble(2e-7, 2.0 * kKe, 0.0, d));
    CHECK(doubled == doctest::Approx(0.5 * ref).epsilon(1e-5));
    // The envelope crosses 1/e at the reported time.
    CHECK(ramsey_components(ref, make_ensemble(2e-7, kKe, 0.0, d)).amplitude() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-6));
  }
}

TEST_CASE("Monte Carlo agrees with the quadrature and ignores the thread count") {
  const ThermalEnsemble ens = make_ensemble(2e-7, kKe);
  const std::vector<double> times{1.0, 5.0, 12.0, 30.0, 80.0};
  const MonteCarloRamsey a = monte_carlo_ramsey(ens, times, 200000, 42, 1);
  const MonteCarloRamsey b = monte_carlo_ramsey(ens, times, 200000, 42, 3);
  CHECK(a.alpha == b.alpha);
  CHECK(a.beta == b.beta);
  CHECK(a.samples == 200000);
  for (std::size_t k = 0; k < times.size(); ++k) {
    const RamseyPoint p = ramsey_components(times[k], ens);
    CHECK(std::abs(a.alpha[k] - p.alpha) < 3.0 * a.alpha_sigma[k] + 1e-12);
    CHECK(std::abs(a.beta[k] - p.beta) < 3.0 * a.beta_sigma[k] + 1e-12);
  }
  const MonteCarloRamsey c = monte_carlo_ramsey(ens, times, 200000, 43, 1);
  CHECK(c.alpha != a.alpha);
}

TEST_CASE("k_E from the magic-point coefficients") {
  CHECK(k_E_from_k_I(5.93e-15, 1.11e8, -22.5) == doctest::Approx(0.144319).epsilon(1e-5));
  CHECK_THROWS_AS(k_E_from_k_I(5.93e-15, 1.11e8, 0.0), DomainError);
}

TEST_CASE("sensitivity budget") {
  MagicSolution sol;
  sol.k_nu = 23.6e-18;
  sol.k_i = 5.93e-15;
  sol.i0 = 1.11e8;
  const SensitivityBudget b = sensitivity_budget(sol, 854.9, 1e7, 0.06, 2e-3);
  CHECK(b.frequency_hz == doctest::Approx(2.36e-3).epsilon(1e-12));
  CHECK(b.intensity_hz == doctest::Approx(5.93e-15 * 6.66e6 * 6.66e6).epsilon(1e-12));
  CHECK(b.field_hz == doctest::Approx(854.9 * 4e-6).epsilon(1e-12));
  CHECK(b.total() == doctest::Approx(b.frequency_hz + b.intensity_hz + b.field_hz));
}

TEST_CASE("ensemble validation") {
  CHECK_THROWS_AS(make_ensemble(0.0, kKe), DomainError);
  CHECK_THROWS_AS(make_ensemble(2e-7, -1.0), DomainError);
  const ThermalEnsemble ens = make_ensemble(2e-7, kKe, 3.0);
  CHECK_THROWS_AS(dls_pdf(2.0, ens), DomainError);
  CHECK_THROWS_AS(ramsey_components(-1.0, ens), DomainError);
  CHECK(std::string(density_name(DlsDensity::kPublished)) == "published");
}
