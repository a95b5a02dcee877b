#pragma once

#include "magictrap/atomdata.hpp"
#include "magictrap/stark.hpp"

namespace magictrap {

double lande_gJ(double l, double s, double j, double g_s = phys::kElectronG);

struct ZeemanContext {
  const AtomSpecies* species = nullptr;
  double g_j = 0.0;
  double g_i = 0.0;
  double delta_hpf_hz = 0.0;
  int two_i = 0;
};

ZeemanContext make_zeeman_context(const AtomDataset& ds);

// Ground-manifold energy in Hz (hyperfine centroid at zero). B in Gauss; negative B is accepted as
// the analytic continuation so that derivatives near B = 0 stay centred.
double breit_rabi_energy(const ZeemanContext& ctx, int two_f, int two_m, double b_gauss);

// E(g2) - E(g1) - delta_hpf in Hz.
double differential_zeeman(const ZeemanContext& ctx, const GroundStatePair& pair, double b_gauss);

struct MagicField {
  double b0_gauss = 0.0;
  double k_m = 0.0;  // Hz/G^2
};

MagicField find_magic_B(const ZeemanContext& ctx, const GroundStatePair& pair, double b_max_gauss = 50.0);

}  // namespace magictrap
