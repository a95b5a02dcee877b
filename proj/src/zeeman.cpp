#include "magictrap/zeeman.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

namespace magictrap {
namespace {

double slope(const ZeemanContext& ctx, const GroundStatePair& pair, double b) {
  const double h = 1e-3;
  return (differential_zeeman(ctx, pair, b + h) - differential_zeeman(ctx, pair, b - h)) / (2.0 * h);
}

}  // namespace

double lande_gJ(double l, double s, double j, double g_s) {
  const double jj = j * (j + 1.0), ss = s * (s + 1.0), ll = l * (l + 1.0);
  return (jj - ss + ll) / (2.0 * jj) + g_s * (jj + ss - ll) / (2.0 * jj);
}

ZeemanContext make_zeeman_context(const AtomDataset& ds) {
  const FineLevel& g = ds.level(ds.ground());
  ZeemanContext ctx;
  ctx.species = &ds.species;
  ctx.g_j = lande_gJ(g.l, 0.5, 0.5 * g.two_j);
  ctx.g_i = ds.species.g_i;
  ctx.delta_hpf_hz = ds.species.delta_hpf_hz;
  ctx.two_i = ds.species.two_i;
  return ctx;
}

double breit_rabi_energy(const ZeemanContext& ctx, int two_f, int two_m, double b_gauss) {
  const int two_i = ctx.two_i;
  if (two_f != two_i + 1 && two_f != two_i - 1) {
    throw DomainError("F = " + format_doubled(two_f) + " is not a ground hyperfine level");
  }
  if (std::abs(two_m) > two_f || (two_m - two_f) % 2 != 0) {
    throw DomainError("m_F = " + format_doubled(two_m) + " is not valid for F = " + format_doubled(two_f));
  }
  const double b = b_gauss * phys::kGauss;
  const double d = ctx.delta_hpf_hz;
  const double m = 0.5 * two_m;
  const double x = (ctx.g_j - ctx.g_i) * phys::kBohrMagneton * b / (phys::kPlanck * d);
  const double base = -d / (2.0 * (two_i + 1)) + ctx.g_i * phys::kBohrMagneton * m * b / phys::kPlanck;
  const double sign = two_f > two_i ? 1.0 : -1.0;
  if (std::abs(two_m) == two_i + 1) {
    // Stretched states: the root is a perfect square, (1 +/- x)^2.
    return base + 0.5 * d * (1.0 + (two_m > 0 ? x : -x));
  }
  return base + sign * 0.5 * d * std::sqrt(1.0 + 4.0 * m * x / (two_i + 1) + x * x);
}

double differential_zeeman(const ZeemanContext& ctx, const GroundStatePair& pair, double b_gauss) {
  return breit_rabi_energy(ctx, pair.g2.two_f, pair.g2.two_m, b_gauss) -
         breit_rabi_energy(ctx, pair.g1.two_f, pair.g1.two_m, b_gauss) - ctx.delta_hpf_hz;
}

MagicField find_magic_B(const ZeemanContext& ctx, const GroundStatePair& pair, double b_max_gauss) {
  MagicField out;
  auto curvature = [&](double b) {
    const double h = 1e-2;
    return (differential_zeeman(ctx, pair, b + h) - 2.0 * differential_zeeman(ctx, pair, b) +
            differential_zeeman(ctx, pair, b - h)) /
           (h * h);
  };
  if (pair.g1.two_m == 0 && pair.g2.two_m == 0) {
    out.k_m = curvature(0.0);
    return out;
  }
  const int steps = 1000;
  double lo = 0.0, slo = slope(ctx, pair, lo);
  bool found = slo == 0.0;
  double hi = lo;
  for (int k = 1; k <= steps && !found; ++k) {
    hi = b_max_gauss * k / steps;
    const double shi = slope(ctx, pair, hi);
    if (shi == 0.0) {
      lo = hi;
      found = true;
      break;
    }
    if ((slo < 0) != (shi < 0)) {
      for (int it = 0; it < 200 && hi - lo > 1e-12; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double smid = slope(ctx, pair, mid);
        if ((smid < 0) == (slo < 0)) {
          lo = mid;
          slo = smid;
        } else {
          hi = mid;
        }
      }
      lo = 0.5 * (lo + hi);
      found = true;
      break;
    }
    lo = hi;
    slo = shi;
  }
  if (!found) throw ConvergenceError("no magic magnetic field in [0, " + std::to_string(b_max_gauss) + "] G");
  out.b0_gauss = lo;
  out.k_m = curvature(lo);
  return out;
}

}  // namespace magictrap
