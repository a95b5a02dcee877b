#include "magictrap/magic.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace magictrap {
namespace {

constexpr double kGHz = 1e9;

double second_difference(const std::function<double(double)>& g, double x, double h) {
  return (g(x + h) - 2.0 * g(x) + g(x - h)) / (h * h);
}

double richardson(const std::function<double(double)>& g, double x, double h) {
  const double coarse = second_difference(g, x, h);
  const double fine = second_difference(g, x, 0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

TrapSpectrum SpectrumTemplate::at(double nu_hz, double intensity) const {
  switch (kind) {
    case Kind::kSideband:
      return sideband_spectrum(nu_hz, modulation_hz, modulation_depth, intensity, max_order);
    case Kind::kCrossed:
      return crossed_spectrum(nu_hz, split_hz, intensity);
    case Kind::kMonochromatic:
      break;
  }
  return monochromatic_spectrum(nu_hz, intensity);
}

SpectrumTemplate SpectrumTemplate::sideband(double modulation_hz, double depth, int max_order) {
  SpectrumTemplate t;
  t.kind = Kind::kSideband;
  t.modulation_hz = modulation_hz;
  t.modulation_depth = depth;
  t.max_order = max_order;
  return t;
}

SpectrumTemplate SpectrumTemplate::crossed(double split_hz) {
  SpectrumTemplate t;
  t.kind = Kind::kCrossed;
  t.split_hz = split_hz;
  return t;
}

DlsFunction make_dls_function(const StarkModel& model, const SpectrumTemplate& tmpl) {
  return [&model, tmpl](double nu, double i) { return model.evaluate(tmpl.at(nu, i)).dls_total; };
}

Gradient dls_gradient(const DlsFunction& f, double nu_hz, double intensity) {
  const double hn = 1e6;
  const double hi = 1e-3 * intensity;
  return {(f(nu_hz + hn, intensity) - f(nu_hz - hn, intensity)) / (2.0 * hn),
          (f(nu_hz, intensity + hi) - f(nu_hz, intensity - hi)) / (2.0 * hi)};
}

ResidualCoefficients residual_coefficients(const DlsFunction& f, double nu_hz, double intensity) {
  ResidualCoefficients r;
  r.k_nu = richardson([&](double nu) { return f(nu, intensity); }, nu_hz, 1e7);
  r.k_i = richardson([&](double i) { return f(nu_hz, i); }, intensity, 1e-2 * intensity);
  return r;
}

MagicSolution find_stationary(const DlsFunction& f, double nu_init, double i_init, const MagicOptions& options) {
  if (!(i_init > 0)) throw DomainError("initial intensity must be positive");
  MagicSolution sol;
  double nu = nu_init, in = i_init;
  const double iscale = i_init;
  for (int it = 1; it <= options.max_iterations; ++it) {
    sol.iterations = it;
    const Gradient g = dls_gradient(f, nu, in);
    const double hn = 1e7, hi = 1e-2 * in;
    const double f0 = f(nu, in);
    const double fnn = (f(nu + hn, in) - 2.0 * f0 + f(nu - hn, in)) / (hn * hn);
    const double fii = (f(nu, in + hi) - 2.0 * f0 + f(nu, in - hi)) / (hi * hi);
    const double fni = (f(nu + hn, in + hi) - f(nu + hn, in - hi) - f(nu - hn, in + hi) + f(nu - hn, in - hi)) /
                       (4.0 * hn * hi);
    // Scaled system: x = nu / 1 GHz, y = I / iscale.
    const double gx = g.d_nu * kGHz, gy = g.d_i * iscale;
    const double hxx = fnn * kGHz * kGHz, hyy = fii * iscale * iscale, hxy = fni * kGHz * iscale;
    const double det = hxx * hyy - hxy * hxy;
    if (det == 0.0 || !std::isfinite(det)) {
      sol.status = "singular-jacobian";
      break;
    }
    double dnu = -(hyy * gx - hxy * gy) / det * kGHz;
    double di = -(hxx * gy - hxy * gx) / det * iscale;
    dnu = std::clamp(dnu, -options.max_nu_step_hz, options.max_nu_step_hz);
    if (in + di < 0.1 * in) di = -0.9 * in;
    nu += dnu;
    in += di;
    if (std::abs(dnu) < options.step_tol_hz && std::abs(di) < options.step_tol_rel_i * in) {
      const Gradient gn = dls_gradient(f, nu, in);
      if (std::abs(gn.d_nu) < options.grad_tol_nu && std::abs(gn.d_i) < options.grad_tol_i) {
        sol.converged = true;
        break;
      }
    }
  }
  const Gradient g = dls_gradient(f, nu, in);
  sol.nu0_abs = nu;
  sol.i0 = in;
  sol.grad_nu = g.d_nu;
  sol.grad_i = g.d_i;
  sol.dls_offset = f(nu, in);
  if (sol.status.empty()) sol.status = sol.converged ? "converged" : "max-iterations";
  return sol;
}

double fine_midpoint_hz(const AtomDataset& ds, int excited_level) {
  return 0.5 * (wavenumber_to_hz(ds.level(excited_level).energy_cm1) - wavenumber_to_hz(ds.level(ds.ground()).energy_cm1));
}

std::vector<TppLine> degenerate_lines(const AtomDataset& ds, int excited_level) {
  std::vector<TppLine> out;
  const std::vector<int> fe = ds.allowed_two_f(excited_level);
  const double mid = fine_midpoint_hz(ds, excited_level);
  for (int two_f : {ds.two_f_low(), ds.two_f_high()}) {
    if (std::find(fe.begin(), fe.end(), two_f) == fe.end()) continue;
    const HyperfineState g{ds.ground(), two_f, 0};
    const HyperfineState e{excited_level, two_f, 0};
    const double nu = 0.5 * transition_angular_frequency(ds, g, e) / phys::kTwoPi;
    out.push_back({two_f, two_f, nu, nu - mid});
  }
  return out;
}

MagicGuess default_guess(const AtomDataset& ds, int excited_level) {
  const auto lines = degenerate_lines(ds, excited_level);
  if (lines.size() != 2) throw DomainError("excited level lacks the two clock-relevant hyperfine lines");
  double dmax = 0.0;
  for (const ReducedDipole& d : ds.dipoles) {
    if (d.lower == excited_level || d.upper == excited_level) dmax = std::max(dmax, d.d_ea0);
  }
  if (dmax == 0.0) throw DomainError("excited level has no dipole couplings");
  SimpleModel sm;
  sm.delta_hpf = phys::kTwoPi * ds.species.delta_hpf_hz;
  sm.d_ei = dmax * phys::kEA0;
  return {0.5 * (lines[0].nu_hz + lines[1].nu_hz), sm.magic_intensity()};
}

MagicSolution find_magic(const StarkModel& model, const SpectrumTemplate& tmpl, std::optional<MagicGuess> init,
                         const MagicOptions& options) {
  if (model.excited_level() < 0) throw DomainError("find_magic needs an excited manifold");
  const MagicGuess guess = init ? *init : default_guess(model.dataset(), model.excited_level());
  const DlsFunction f = make_dls_function(model, tmpl);
  MagicSolution sol = find_stationary(f, guess.nu_hz, guess.intensity, options);
  sol.delta_nu0 = sol.nu0_abs - fine_midpoint_hz(model.dataset(), model.excited_level());
  sol.trap_depth = trap_depth_uk(model.evaluate(tmpl.at(sol.nu0_abs, sol.i0)));
  const ResidualCoefficients k = residual_coefficients(f, sol.nu0_abs, sol.i0);
  sol.k_nu = k.k_nu;
  sol.k_i = k.k_i;
  if (sol.converged && (sol.k_nu <= 0 || sol.k_i <= 0 || sol.i0 <= 0)) {
    sol.converged = false;
    sol.status = "saddle";
  }
  return sol;
}

std::vector<double> linear_axis(double lo, double hi, std::size_t steps) {
  if (steps == 0) throw DomainError("axis needs at least one point");
  if (steps == 1) return {lo};
  if (!(hi > lo)) throw DomainError("axis range must be increasing");
  std::vector<double> v(steps);
  for (std::size_t k = 0; k < steps; ++k) v[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(steps - 1);
  return v;
}

LandscapeGrid dls_landscape(const StarkModel& model, const SpectrumTemplate& tmpl, const std::vector<double>& nu_hz,
                            const std::vector<double>& intensity, unsigned threads) {
  for (std::size_t k = 1; k < nu_hz.size(); ++k) {
    if (!(nu_hz[k] > nu_hz[k - 1])) throw DomainError("frequency axis must be strictly increasing");
  }
  for (std::size_t k = 1; k < intensity.size(); ++k) {
    if (!(intensity[k] > intensity[k - 1])) throw DomainError("intensity axis must be strictly increasing");
  }
  LandscapeGrid grid{nu_hz, intensity, std::vector<double>(nu_hz.size() * intensity.size())};
  const std::size_t rows = intensity.size();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, rows));

  std::mutex err_mu;
  std::exception_ptr first_error;
  std::size_t first_row = rows;
  auto run_row = [&](std::size_t r) {
    const double in = intensity[r];
    double* out = grid.dls_hz.data() + r * nu_hz.size();
    try {
      if (tmpl.kind == SpectrumTemplate::Kind::kMonochromatic) {
        const std::vector<double> row = model.dls_monochromatic(nu_hz, in);
        std::copy(row.begin(), row.end(), out);
      } else {
        for (std::size_t c = 0; c < nu_hz.size(); ++c) out[c] = model.evaluate(tmpl.at(nu_hz[c], in)).dls_total;
      }
    } catch (const ResonanceError& e) {
      // Name the first offending grid point by scanning the row point by point.
      std::string where;
      for (double nu : nu_hz) {
        try {
          (void)model.evaluate(tmpl.at(nu, in));
        } catch (const ResonanceError&) {
          std::ostringstream s;
          s.precision(9);
          s << "grid point (nu=" << nu << " Hz, I=" << in << " W/m^2): ";
          where = s.str();
          break;
        }
      }
      std::lock_guard<std::mutex> lock(err_mu);
      if (r < first_row) {
        first_row = r;
        first_error = std::make_exception_ptr(ResonanceError(where + e.what()));
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(err_mu);
      if (r < first_row) {
        first_row = r;
        first_error = std::current_exception();
      }
    }
  };
  if (threads <= 1) {
    for (std::size_t r = 0; r < rows; ++r) run_row(r);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t r = t; r < rows; r += threads) run_row(r);
      });
    }
    for (auto& th : pool) th.join();
  }
  if (first_error) std::rethrow_exception(first_error);
  return grid;
}

double SimpleModel::dls(double delta1, double intensity) const {
  const double e2 = 2.0 * intensity / (phys::kSpeedOfLight * phys::kEpsilon0);
  const double w1 = e2 * d_ig * d_ig / (phys::kHbar * phys::kHbar);
  const double w2 = e2 * d_ei * d_ei / (phys::kHbar * phys::kHbar);
  const double d2 = big_delta * big_delta;
  return -delta_hpf * w1 / (4.0 * d2) + delta_hpf * w1 * w2 / (4.0 * d2 * delta1 * (delta_hpf - delta1));
}

double SimpleModel::magic_intensity() const {
  // dDLS/dI = 0 at D1 = d/2 with W^2 = 2 I d^2 / (c eps0 hbar^2).
  return delta_hpf * delta_hpf * phys::kHbar * phys::kHbar * phys::kSpeedOfLight * phys::kEpsilon0 /
         (16.0 * d_ei * d_ei);
}

}  // namespace magictrap
