#include "magictrap/presets.hpp"

#include "magictrap/constants.hpp"

namespace magictrap {

std::vector<std::string> preset_names() { return {"table1", "tableS5", "tableS6", "tableS7"}; }

std::vector<PresetRow> preset_rows(std::string_view name) {
  if (name == "table1") {
    return {{"cs", 0, 0, "5D3_2"},  {"cs", 0, 0, "5D5_2"},  {"cs", 0, 0, "7S1_2"}, {"cs", -1, 1, "7S1_2"},
            {"cs", 3, 4, "7S1_2"},  {"cs", 0, 0, "7D3_2"},  {"cs", 0, 0, "7D5_2"}};
  }
  if (name == "tableS5") {
    return {{"rb87", 0, 0, "4D5_2"}, {"rb87", 0, 0, "4D3_2"}, {"rb87", 0, 0, "6S1_2"}, {"rb87", -1, 1, "6S1_2"},
            {"rb87", 1, 2, "6S1_2"}, {"rb87", 0, 0, "6D5_2"}, {"rb87", 0, 0, "6D3_2"}, {"rb85", 0, 0, "4D5_2"},
            {"rb85", 0, 0, "4D3_2"}, {"rb85", 0, 0, "6S1_2"}, {"rb85", 0, 0, "6D5_2"}, {"rb85", 0, 0, "6D3_2"}};
  }
  if (name == "tableS6") {
    return {{"cs", 0, 0, "5D3_2", 9.4}, {"cs", 0, 0, "5D5_2", 9.4}, {"cs", 0, 0, "7S1_2", 7.0}};
  }
  if (name == "tableS7") {
    return {{"rb87", 0, 0, "4D5_2", 6.9}, {"rb87", 0, 0, "4D3_2", 6.9}, {"rb87", 0, 0, "6S1_2", 5.3},
            {"rb85", 0, 0, "4D5_2", 3.0}, {"rb85", 0, 0, "4D3_2", 3.0}, {"rb85", 0, 0, "6S1_2", 2.3}};
  }
  throw DomainError("unknown preset '" + std::string(name) + "' (expected table1, tableS5, tableS6 or tableS7)");
}

}  // namespace magictrap
