#pragma once

#include <vector>

#include "magictrap/stark.hpp"

namespace magictrap {

struct Linewidth {
  double gamma = 0.0;     // rad/s
  double gamma_hz = 0.0;  // gamma / 2 pi
};

// Spontaneous decay rate summed over every listed channel to a lower-lying level.
Linewidth natural_linewidth(const AtomDataset& ds, int level);

// Spontaneous Raman rate (Hz) out of one ground sublevel into every other ground sublevel, pi-polarized
// drive, summed incoherently over spectrum components and over scattered polarizations.
double raman_rate_state(const AtomDataset& ds, const HyperfineState& state, const TrapSpectrum& spectrum,
                        const StarkOptions& options = {});

// Contribution of one final sublevel; final == initial (Rayleigh) is returned as 0.
double raman_rate_channel(const AtomDataset& ds, const HyperfineState& initial, const HyperfineState& final_state,
                          const TrapSpectrum& spectrum, const StarkOptions& options = {});

struct PairRates {
  double g1 = 0.0;
  double g2 = 0.0;
  double max() const { return g1 > g2 ? g1 : g2; }
};

PairRates raman_rates(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                      const StarkOptions& options = {});
double raman_rate_1p(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                     const StarkOptions& options = {});

// Gamma_e times the far-detuned excited population sum_e (Omega/(2 Delta_e))^2, per ground state.
PairRates scatter_rates_2p(const StarkModel& model, const TrapSpectrum& spectrum);
double scatter_rate_2p(const StarkModel& model, const TrapSpectrum& spectrum);

struct T1Bound {
  double seconds = 0.0;
  bool unbounded = false;
};

T1Bound t1_bound(const std::vector<double>& rates_hz);

}  // namespace magictrap
