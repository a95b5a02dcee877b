#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace magictrap {

struct PresetRow {
  std::string species;
  int m1 = 0;
  int m2 = 0;
  std::string excited;
  double sideband_ghz = 0.0;  // 0 for a monochromatic beam
};

// Row lists for table1, tableS5, tableS6, tableS7. Unknown names throw DomainError.
std::vector<PresetRow> preset_rows(std::string_view name);
std::vector<std::string> preset_names();

// Phase-modulation depth used by every polychromatic preset.
inline constexpr double kPresetModulationDepth = 1.44;

}  // namespace magictrap
