#include <doctest.h>

#include <cmath>

#include "magictrap/magic.hpp"
#include "magictrap/scatter.hpp"
#include "support.hpp"

using namespace magictrap;
using testing_support::dataset;

namespace {

constexpr double kNu1079 = phys::kSpeedOfLight / 1079e-9;

}  // namespace

TEST_CASE("cesium D2 natural linewidth") {
  const auto& cs = dataset("cs");
  const Linewidth lw = natural_linewidth(cs, cs.level_index("6P3_2"));
  CHECK(lw.gamma_hz == doctest::Approx(5.22e6).epsilon(0.01));
  CHECK(lw.gamma == doctest::Approx(phys::kTwoPi * lw.gamma_hz).epsilon(1e-15));
  CHECK_THROWS_AS(natural_linewidth(cs, cs.ground()), DomainError);
}

TEST_CASE("linewidth scales with the squared dipole") {
  AtomDataset a = testing_support::two_level(12000.0, 3.0);
  AtomDataset b = testing_support::two_level(12000.0, 6.0);
  CHECK(natural_linewidth(b, 1).gamma == doctest::Approx(4.0 * natural_linewidth(a, 1).gamma).epsilon(1e-14));
  AtomDataset c = testing_support::two_level(24000.0, 3.0);
  CHECK(natural_linewidth(c, 1).gamma == doctest::Approx(8.0 * natural_linewidth(a, 1).gamma).epsilon(1e-14));
}

TEST_CASE("Raman rates are linear in intensity") {
  const auto& cs = dataset("cs");
  const GroundStatePair pair = make_pair(cs, 0, 0);
  const double a = raman_rate_1p(cs, pair, monochromatic_spectrum(kNu1079, 1e8));
  const double b = raman_rate_1p(cs, pair, monochromatic_spectrum(kNu1079, 2.5e8));
  CHECK(a > 0.0);
  CHECK(b == doctest::Approx(2.5 * a).epsilon(1e-12));
  CHECK(raman_rate_1p(cs, pair, monochromatic_spectrum(kNu1079, 0.0)) == 0.0);
}

TEST_CASE("Rayleigh channel is excluded and channels add up") {
  const auto& cs = dataset("cs");
  const TrapSpectrum sp = monochromatic_spectrum(kNu1079, 1e8);
  const HyperfineState g = cs.ground_state(6, 0);
  CHECK(raman_rate_channel(cs, g, g, sp) == 0.0);
  double sum = 0.0;
  for (int two_f : {6, 8}) {
    for (int two_m = -two_f; two_m <= two_f; two_m += 2) sum += raman_rate_channel(cs, g, cs.ground_state(two_f, two_m), sp);
  }
  CHECK(raman_rate_state(cs, g, sp) == doctest::Approx(sum).epsilon(1e-12));
  // Only |dm| <= 1 is reachable with pi absorption.
  CHECK(raman_rate_channel(cs, g, cs.ground_state(8, 4), sp) == 0.0);
  // pi-pi between m = 0 states of different F needs an F_i adjacent to both: none exists.
  CHECK(raman_rate_channel(cs, g, cs.ground_state(8, 0), sp) == 0.0);
  CHECK(raman_rate_channel(cs, g, cs.ground_state(8, 2), sp) > 0.0);
}

TEST_CASE("pair rates take the larger clock state") {
  const auto& cs = dataset("cs");
  const GroundStatePair pair = make_pair(cs, 0, 0);
  const TrapSpectrum sp = monochromatic_spectrum(kNu1079, 1e8);
  const PairRates r = raman_rates(cs, pair, sp);
  CHECK(r.g1 == doctest::Approx(raman_rate_state(cs, pair.g1, sp)).epsilon(1e-14));
  CHECK(r.g2 == doctest::Approx(raman_rate_state(cs, pair.g2, sp)).epsilon(1e-14));
  CHECK(raman_rate_1p(cs, pair, sp) == r.max());
}

TEST_CASE("two-photon scattering grows as I^2") {
  const auto& cs = dataset("cs");
  const int s7 = cs.level_index("7S1_2");
  const StarkModel model(cs, make_pair(cs, 0, 0), s7);
  const double nu = fine_midpoint_hz(cs, s7) + 2.19e8;
  const double a = scatter_rate_2p(model, monochromatic_spectrum(nu, 1e8));
  const double b = scatter_rate_2p(model, monochromatic_spectrum(nu, 3e8));
  CHECK(a > 0.0);
  CHECK(b == doctest::Approx(9.0 * a).epsilon(1e-12));
  const PairRates r = scatter_rates_2p(model, monochromatic_spectrum(nu, 1e8));
  CHECK(a == r.max());
  const StarkModel bare(cs, make_pair(cs, 0, 0), -1);
  CHECK_THROWS_AS(scatter_rate_2p(bare, monochromatic_spectrum(nu, 1e8)), DomainError);
}

TEST_CASE("T1 bound from summed rates") {
  const T1Bound t = t1_bound({0.25, 0.75});
  CHECK_FALSE(t.unbounded);
  CHECK(t.seconds == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(t1_bound({0.0, 0.0}).unbounded);
  CHECK(t1_bound({}).unbounded);
  CHECK_THROWS_AS(t1_bound({0.1, -0.2}), DomainError);
}
