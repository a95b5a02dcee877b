#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "magictrap/stark.hpp"

namespace magictrap {

// Builds the trap spectrum at laser (carrier or centre) frequency nu and total intensity I.
struct SpectrumTemplate {
  enum class Kind { kMonochromatic, kSideband, kCrossed };
  Kind kind = Kind::kMonochromatic;
  double modulation_hz = 0.0;
  double modulation_depth = 1.44;
  int max_order = 2;
  double split_hz = 0.0;

  TrapSpectrum at(double nu_hz, double intensity) const;
  static SpectrumTemplate monochromatic() { return {}; }
  static SpectrumTemplate sideband(double modulation_hz, double depth = 1.44, int max_order = 2);
  static SpectrumTemplate crossed(double split_hz);
};

// DLS in Hz as a function of (nu in Hz, I in W/m^2).
using DlsFunction = std::function<double(double, double)>;

DlsFunction make_dls_function(const StarkModel& model, const SpectrumTemplate& tmpl);

struct MagicSolution {
  double nu0_abs = 0.0;    // Hz
  double delta_nu0 = 0.0;  // Hz, relative to half the ground-excited centroid frequency
  double i0 = 0.0;         // W/m^2
  double trap_depth = 0.0; // uK
  double k_nu = 0.0;       // Hz^-1
  double k_i = 0.0;        // Hz m^4 / W^2
  double dls_offset = 0.0; // Hz
  double grad_nu = 0.0;    // Hz/Hz
  double grad_i = 0.0;     // Hz m^2 / W
  int iterations = 0;
  bool converged = false;
  std::string status;
};

struct MagicOptions {
  int max_iterations = 100;
  double step_tol_hz = 1e3;
  double step_tol_rel_i = 1e-6;
  double max_nu_step_hz = 3e8;
  // Gradient residual required at the accepted point, in Hz/Hz and Hz m^2/W.
  double grad_tol_nu = 1e-14;
  double grad_tol_i = 1e-14;
};

struct Gradient {
  double d_nu = 0.0;
  double d_i = 0.0;
};

// Central differences with h_nu = 1 MHz and h_I = 1e-3 I.
Gradient dls_gradient(const DlsFunction& f, double nu_hz, double intensity);

struct ResidualCoefficients {
  double k_nu = 0.0;
  double k_i = 0.0;
};

// Second central differences (h_nu = 10 MHz, h_I = 1e-2 I) with one Richardson refinement.
ResidualCoefficients residual_coefficients(const DlsFunction& f, double nu_hz, double intensity);

// Newton iteration on the finite-difference gradient in scaled variables
// (nu in GHz about nu_init, I in units of i_init).
MagicSolution find_stationary(const DlsFunction& f, double nu_init, double i_init, const MagicOptions& options = {});

struct TppLine {
  int two_f_g = 0;
  int two_f_e = 0;
  double nu_hz = 0.0;       // laser frequency of the degenerate resonance
  double relative_hz = 0.0; // nu_hz minus half the centroid-to-centroid frequency
};

// Degenerate (F_g = F_e) two-photon resonances of the ground doublet.
std::vector<TppLine> degenerate_lines(const AtomDataset& ds, int excited_level);
double fine_midpoint_hz(const AtomDataset& ds, int excited_level);

struct MagicGuess {
  double nu_hz = 0.0;
  double intensity = 0.0;
};

// nu: midpoint of the F_low<->F_low and F_high<->F_high lines; I: simple-model estimate with the
// strongest reduced element into the excited level.
MagicGuess default_guess(const AtomDataset& ds, int excited_level);

MagicSolution find_magic(const StarkModel& model, const SpectrumTemplate& tmpl = {},
                         std::optional<MagicGuess> init = std::nullopt, const MagicOptions& options = {});

struct LandscapeGrid {
  std::vector<double> nu_hz;
  std::vector<double> intensity;
  std::vector<double> dls_hz;  // row-major: intensity rows, frequency columns

  double at(std::size_t i_row, std::size_t nu_col) const { return dls_hz[i_row * nu_hz.size() + nu_col]; }
};

std::vector<double> linear_axis(double lo, double hi, std::size_t steps);

LandscapeGrid dls_landscape(const StarkModel& model, const SpectrumTemplate& tmpl, const std::vector<double>& nu_hz,
                            const std::vector<double>& intensity, unsigned threads = 0);

// Single intermediate |i>, single excited |e>, two ground states split by delta_hpf, one-photon
// detuning Delta held fixed: DLS = -d W1^2/(4 D^2) + d W1^2 W2^2 / (4 D^2 D1 (d - D1)).
struct SimpleModel {
  double delta_hpf = 0.0;  // rad/s
  double big_delta = 0.0;  // rad/s
  double d_ig = 0.0;       // C m
  double d_ei = 0.0;       // C m

  double dls(double delta1, double intensity) const;  // rad/s
  double magic_delta1() const { return 0.5 * delta_hpf; }
  double magic_intensity() const;
};

}  // namespace magictrap
