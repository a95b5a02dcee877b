#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <string>

#include "magictrap/atomdata.hpp"

namespace testing_support {

inline const magictrap::AtomDataset& dataset(const std::string& species) {
  static std::map<std::string, magictrap::AtomDataset> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(species);
  if (it == cache.end()) it = cache.emplace(species, magictrap::load_dataset(magictrap::default_data_dir(), species)).first;
  return it->second;
}

inline double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

inline magictrap::FineLevel fine(int n, int l, int two_j, double energy, double a = 0.0, double b = 0.0) {
  magictrap::FineLevel lv;
  lv.n = n;
  lv.l = l;
  lv.two_j = two_j;
  lv.energy_cm1 = energy;
  lv.a_mhz = a;
  lv.b_mhz = b;
  return lv;
}

// Ground S1/2 with nuclear spin 1/2 and a single P1/2 partner whose hyperfine constant is zero,
// so every intermediate sublevel shares one resonance frequency.
inline magictrap::AtomDataset two_level(double p_energy_cm1, double d_ea0, double a_ground_mhz = 1000.0) {
  magictrap::AtomDataset ds;
  ds.species.name = "toy";
  ds.species.two_i = 1;
  ds.species.delta_hpf_hz = a_ground_mhz * 1e6;
  ds.levels = {fine(1, 0, 1, 0.0, a_ground_mhz), fine(1, 1, 1, p_energy_cm1)};
  ds.dipoles = {{0, 1, d_ea0, "toy"}};
  ds.finalize();
  return ds;
}

}  // namespace testing_support
