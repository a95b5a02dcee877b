#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "magictrap/atomdata.hpp"

namespace magictrap {

// Sign of the counter-rotating term in the one-photon shift.
//   kStandard:  1/(w0 - w) + 1/(w0 + w)   (textbook second-order result)
//   kPublished: 1/(w0 - w) - 1/(w0 + w)   (convention the published magic tables are built on)
enum class CounterRotating { kStandard, kPublished };

enum class TppMode { kExact, kApprox };

struct StarkOptions {
  CounterRotating counter_rotating = CounterRotating::kPublished;
  TppMode tpp_mode = TppMode::kExact;
  // Zero degenerate two-photon couplings with F_e != F_g. Off by default: the angular algebra
  // already suppresses them for S -> S, and forcing it distorts D-manifold results.
  bool degenerate_selection_gate = false;
  double guard_hz = 1e6;
};

struct TrapComponent {
  double angular_frequency = 0.0;  // rad/s
  double amplitude_fraction = 1.0;
};

struct TrapSpectrum {
  std::vector<TrapComponent> components;
  double total_intensity = 0.0;  // W/m^2

  void validate() const;
};

struct GroundStatePair {
  HyperfineState g1;  // lower hyperfine manifold
  HyperfineState g2;  // upper hyperfine manifold
};

// (m, m') in ordinary units; m_F is an integer for every shipped species.
GroundStatePair make_pair(const AtomDataset& ds, int m1, int m2);

struct TwoPhotonTerm {
  int two_f_e = 0;
  std::size_t comp_a = 0;
  std::size_t comp_b = 0;
  double rabi = 0.0;      // rad/s
  double detuning = 0.0;  // rad/s, (E_e - E_g)/hbar - (w_a + w_b)
  double shift_hz = 0.0;
};

struct ShiftBreakdown {
  double one_photon_g1 = 0.0;
  double one_photon_g2 = 0.0;
  double two_photon_g1 = 0.0;
  double two_photon_g2 = 0.0;
  double dls_total = 0.0;
  std::vector<double> one_photon_by_component_g1;
  std::vector<double> one_photon_by_component_g2;
  std::vector<TwoPhotonTerm> two_photon_terms_g1;
  std::vector<TwoPhotonTerm> two_photon_terms_g2;
  bool near_two_photon_resonance = false;  // some |Delta_e| < 10 Omega_TPP
};

double field_amplitude(double intensity, double fraction = 1.0);

// Precomputed sublevel sums for one ground-state pair and one excited manifold.
class StarkModel {
 public:
  StarkModel(const AtomDataset& ds, GroundStatePair pair, int excited_level, StarkOptions options = {});

  ShiftBreakdown evaluate(const TrapSpectrum& spectrum) const;
  double one_photon(int which, const TrapSpectrum& spectrum, std::vector<double>* by_component = nullptr) const;
  double two_photon(int which, const TrapSpectrum& spectrum, std::vector<TwoPhotonTerm>* terms = nullptr,
                    bool* near = nullptr) const;
  // Monochromatic DLS at many laser frequencies with the same intensity, batched through the kernels.
  std::vector<double> dls_monochromatic(const std::vector<double>& nu_hz, double intensity) const;

  const AtomDataset& dataset() const { return *ds_; }
  const GroundStatePair& pair() const { return pair_; }
  int excited_level() const { return excited_; }
  const StarkOptions& options() const { return opt_; }
  const HyperfineState& state(int which) const { return which == 0 ? pair_.g1 : pair_.g2; }

 private:
  struct Table {
    std::vector<double> w;
    std::vector<double> pole;  // rad/s
    std::vector<int> level;
  };
  struct TppChannel {
    int two_f_e = 0;
    double omega_eg = 0.0;
    Table sums;
  };
  struct StateTables {
    Table opp;
    std::vector<TppChannel> tpp;
  };

  void guard(const Table& t, double omega) const;
  void build(int which);

  const AtomDataset* ds_;
  GroundStatePair pair_;
  int excited_;
  StarkOptions opt_;
  StateTables tables_[2];
};

double one_photon_shift(const AtomDataset& ds, const HyperfineState& state, const TrapSpectrum& spectrum,
                        const StarkOptions& options = {});

// Effective two-photon Rabi frequency between a ground and an excited sublevel for photons from
// comp1 and comp2. Identical components use the degenerate sum (optionally gated); otherwise both
// time orderings are kept with each photon's own detuning.
double tpp_rabi(const AtomDataset& ds, const HyperfineState& ground, const HyperfineState& excited,
                const TrapComponent& comp1, const TrapComponent& comp2, double total_intensity,
                const StarkOptions& options = {}, bool force_general = false);

double two_photon_shift(const AtomDataset& ds, const HyperfineState& state, const TrapSpectrum& spectrum,
                        int excited_level, const StarkOptions& options = {});

ShiftBreakdown total_dls(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                         int excited_level, const StarkOptions& options = {});

double trap_depth_uk(const ShiftBreakdown& b);
double trap_depth_uk(const AtomDataset& ds, const GroundStatePair& pair, const TrapSpectrum& spectrum,
                     int excited_level, const StarkOptions& options = {});

TrapSpectrum monochromatic_spectrum(double frequency_hz, double total_intensity);
// Phase-modulated carrier: components at carrier + n*modulation for |n| <= max_order with
// amplitudes |J_n(depth)|, renormalized over the retained orders.
TrapSpectrum sideband_spectrum(double carrier_hz, double modulation_hz, double modulation_depth,
                               double total_intensity, int max_order);
// Power fractions J_n(depth)^2 before renormalization, n = 0..max_order.
std::vector<double> sideband_power_fractions(double modulation_depth, int max_order);
TrapSpectrum crossed_spectrum(double center_hz, double beam_splitting_hz, double total_intensity);

}  // namespace magictrap
