#include <doctest.h>

#include <cmath>

#include "magictrap/zeeman.hpp"
#include "support.hpp"

using namespace magictrap;
using testing_support::dataset;

TEST_CASE("Lande factor") {
  CHECK(lande_gJ(0, 0.5, 0.5) == doctest::Approx(phys::kElectronG).epsilon(1e-15));
  CHECK(lande_gJ(1, 0.5, 1.5, 2.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  CHECK(lande_gJ(1, 0.5, 0.5, 2.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("zero field reproduces the hyperfine energies") {
  for (const char* sp : {"cs", "rb87", "rb85"}) {
    const auto& ds = dataset(sp);
    const ZeemanContext ctx = make_zeeman_context(ds);
    for (int two_f : {ds.two_f_low(), ds.two_f_high()}) {
      const double expect = hyperfine_shift(ds.level(ds.ground()), two_f, ds.species.two_i);
      for (int two_m = -two_f; two_m <= two_f; two_m += 2) {
        CHECK(breit_rabi_energy(ctx, two_f, two_m, 0.0) == doctest::Approx(expect).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("energies sum to zero at any field") {
  for (const char* sp : {"cs", "rb87", "rb85"}) {
    const auto& ds = dataset(sp);
    const ZeemanContext ctx = make_zeeman_context(ds);
    for (double b : {0.3, 17.0, 900.0, -4.0}) {
      double sum = 0.0, scale = 0.0;
      for (int two_f : {ds.two_f_low(), ds.two_f_high()}) {
        for (int two_m = -two_f; two_m <= two_f; two_m += 2) {
          const double e = breit_rabi_energy(ctx, two_f, two_m, b);
          sum += e;
          scale += std::abs(e);
        }
      }
      CHECK(std::abs(sum) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("stretched states move linearly with field") {
  const auto& cs = dataset("cs");
  const ZeemanContext ctx = make_zeeman_context(cs);
  for (int two_m : {8, -8}) {
    const double e0 = breit_rabi_energy(ctx, 8, two_m, 0.0);
    const double e1 = breit_rabi_energy(ctx, 8, two_m, 10.0);
    const double e2 = breit_rabi_energy(ctx, 8, two_m, 20.0);
    CHECK(std::abs(e2 - 2.0 * e1 + e0) <= 1e-6 * std::abs(e1 - e0));
    const double slope = (e1 - e0) / 10.0;
    const double expect = (two_m > 0 ? 1.0 : -1.0) * (ctx.g_j + 7.0 * ctx.g_i) / 2.0 * phys::kBohrMagneton * phys::kGauss /
                          phys::kPlanck;
    CHECK(slope == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("clock pair quadratic coefficient") {
  const auto& cs = dataset("cs");
  const ZeemanContext ctx = make_zeeman_context(cs);
  const GroundStatePair clock = make_pair(cs, 0, 0);
  CHECK(differential_zeeman(ctx, clock, 0.0) == doctest::Approx(0.0).epsilon(1e-6));
  const MagicField mf = find_magic_B(ctx, clock);
  CHECK(mf.b0_gauss == 0.0);
  CHECK(mf.k_m == doctest::Approx(2.0 * 427.45).epsilon(1e-3));
  // Quadratic law to better than 1% up to 1 G; the odd terms vanish for the clock pair.
  for (double b : {0.1, 0.5, 1.0}) {
    const double quad = 0.5 * mf.k_m * b * b;
    CHECK(std::abs(differential_zeeman(ctx, clock, b) - quad) < 0.01 * quad);
  }
}

TEST_CASE("magic field of the (-1,1) pair is a stationary minimum") {
  for (const char* sp : {"cs", "rb87", "rb85"}) {
    const auto& ds = dataset(sp);
    const ZeemanContext ctx = make_zeeman_context(ds);
    const GroundStatePair pair = make_pair(ds, -1, 1);
    const MagicField mf = find_magic_B(ctx, pair);
    CHECK(mf.b0_gauss > 0.0);
    CHECK(mf.k_m > 0.0);
    // The differential shift carries the hyperfine offset, so a tiny step is all rounding noise.
    const double h = 1e-2;
    const double slope = (differential_zeeman(ctx, pair, mf.b0_gauss + h) - differential_zeeman(ctx, pair, mf.b0_gauss - h)) /
                         (2.0 * h);
    CHECK(std::abs(slope) < 1e-3);
    const double b = 0.1;
    const double quad = 0.5 * mf.k_m * b * b;
    const double actual = differential_zeeman(ctx, pair, mf.b0_gauss + b) - differential_zeeman(ctx, pair, mf.b0_gauss);
    CHECK(std::abs(actual - quad) < 0.01 * quad);
  }
}

TEST_CASE("a pair with a linear differential shift has no magic field") {
  const auto& cs = dataset("cs");
  const ZeemanContext ctx = make_zeeman_context(cs);
  CHECK_THROWS_AS(find_magic_B(ctx, make_pair(cs, 3, 4)), ConvergenceError);
}

TEST_CASE("invalid sublevels are rejected") {
  const auto& cs = dataset("cs");
  const ZeemanContext ctx = make_zeeman_context(cs);
  CHECK_THROWS_AS(breit_rabi_energy(ctx, 10, 0, 1.0), DomainError);
  CHECK_THROWS_AS(breit_rabi_energy(ctx, 6, 8, 1.0), DomainError);
}
