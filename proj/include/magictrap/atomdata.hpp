#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "magictrap/constants.hpp"

namespace magictrap {

// Angular momenta are stored doubled (two_j = 2j) so half-integers stay exact.

struct AtomSpecies {
  std::string name;
  int two_i = 0;
  double delta_hpf_hz = 0.0;
  double g_i = 0.0;
  double mass_kg = 0.0;
  std::vector<std::string> reference_values;  // keys not taken from the level tables
};

struct FineLevel {
  int n = 0;
  int l = 0;
  int two_j = 1;
  double energy_cm1 = 0.0;
  double a_mhz = 0.0;
  double b_mhz = 0.0;

  std::string key() const;  // e.g. "6P3_2"
};

struct ReducedDipole {
  int lower = -1;  // level indices
  int upper = -1;
  double d_ea0 = 0.0;
  std::string source;
};

struct HyperfineState {
  int level = 0;
  int two_f = 0;
  int two_m = 0;
};

class AtomDataset {
 public:
  AtomSpecies species;
  std::vector<FineLevel> levels;
  std::vector<ReducedDipole> dipoles;
  std::vector<int> one_photon_levels;

  // Checks every invariant and builds lookup tables. Throws DatasetError.
  void finalize();

  int ground() const { return ground_; }
  int find_level(std::string_view key) const;  // -1 when absent
  int level_index(std::string_view key) const;  // throws DomainError when absent
  const FineLevel& level(int index) const { return levels.at(static_cast<std::size_t>(index)); }

  // Reduced element in e*a0 between two levels in either order, 0 when none is listed.
  double reduced(int a, int b) const;
  bool has_dipole(int a, int b) const { return reduced(a, b) != 0.0; }

  std::vector<int> allowed_two_f(int level) const;
  double hyperfine_offset_hz(int level, int two_f) const;
  double state_frequency_hz(const HyperfineState& s) const;
  HyperfineState ground_state(int two_f, int two_m) const;
  int two_f_low() const;
  int two_f_high() const { return two_f_low() + 2; }

 private:
  int ground_ = -1;
  std::vector<double> dipole_matrix_;
};

// Standard magnetic-dipole plus electric-quadrupole hyperfine energy relative to the centroid.
double hyperfine_shift(const FineLevel& level, int two_f, int two_i);

// 2*pi*(nu_upper - nu_lower), exactly antisymmetric in its arguments.
double transition_angular_frequency(const AtomDataset& ds, const HyperfineState& lower,
                                    const HyperfineState& upper);

AtomDataset load_dataset(const std::filesystem::path& data_dir, std::string_view species);
void write_dataset(const AtomDataset& ds, const std::filesystem::path& species_dir);

// Half-integer text such as "7/2", "3", "0.5" to a doubled integer.
int parse_doubled(std::string_view text);
std::string format_doubled(int twice);

// Resolves --data-dir, then MAGICTRAP_DATA, then the source-tree default.
std::filesystem::path default_data_dir();

}  // namespace magictrap
