#pragma once

#include <cstdint>
#include <vector>

#include "magictrap/magic.hpp"

namespace magictrap {

// Density of the thermal DLS offset x = delta_DLS - delta0 (Hz).
//   kBoltzmann: pushed forward from the 3D Boltzmann energy law through x = k_E E^2 / 4,
//               p(x) = 2 A^3 sqrt(x) exp(-2 A sqrt(x)).
//   kPublished: p(x) = (A^4 / 12) x exp(-A sqrt(x)).
enum class DlsDensity { kBoltzmann, kPublished };

const char* density_name(DlsDensity d);

struct ThermalEnsemble {
  double temperature_k = 0.0;
  double k_e = 0.0;     // Hz / uK^2
  double delta0 = 0.0;  // Hz
  double a_const = 0.0; // s^(1/2)
  DlsDensity density = DlsDensity::kBoltzmann;
};

// A = 1 / (sqrt(k_E) k_B T) with k_B T expressed in uK.
ThermalEnsemble make_ensemble(double temperature_k, double k_e, double delta0 = 0.0,
                              DlsDensity density = DlsDensity::kBoltzmann);

// Energy density (1/J) of a 3D harmonic thermal ensemble.
double boltzmann_pdf(double energy_j, double temperature_k);

// Hz / uK^2 from k_I (Hz m^4 / W^2), I0 (W/m^2) and U_T (uK).
double k_E_from_k_I(double k_i, double i0, double trap_depth_uk);

// Density (1/Hz) at absolute DLS value delta_dls >= delta0.
double dls_pdf(double delta_dls, const ThermalEnsemble& ens);

struct RamseyPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double amplitude() const;
};

// Phases are 2 pi x t with x in Hz and t in s.
RamseyPoint ramsey_components(double t, const ThermalEnsemble& ens);
double ramsey_signal(double t, double delta_pp, const ThermalEnsemble& ens);

struct RamseyEnvelope {
  std::vector<double> times;
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> amplitude;
  double t2 = 0.0;
};

RamseyEnvelope ramsey_envelope(const ThermalEnsemble& ens, const std::vector<double>& times);

// First 1/e crossing of the envelope, bracketed on a log grid then bisected.
double coherence_time(const ThermalEnsemble& ens);

struct MonteCarloRamsey {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<double> alpha_sigma;  // standard errors of the means
  std::vector<double> beta_sigma;
  std::uint64_t samples = 0;
};

// Energies drawn from the Boltzmann law and mapped through x = k_E E^2 / 4. Chunked seeding makes the
// result independent of the thread count.
MonteCarloRamsey monte_carlo_ramsey(const ThermalEnsemble& ens, const std::vector<double>& times,
                                    std::uint64_t samples, std::uint64_t seed, unsigned threads = 0);

struct SensitivityBudget {
  double frequency_hz = 0.0;
  double intensity_hz = 0.0;
  double field_hz = 0.0;
  double total() const { return frequency_hz + intensity_hz + field_hz; }
};

SensitivityBudget sensitivity_budget(const MagicSolution& solution, double k_m, double delta_nu_hz,
                                     double delta_i_rel, double delta_b_gauss);

}  // namespace magictrap
