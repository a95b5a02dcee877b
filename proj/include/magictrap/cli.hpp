#pragma once

#include <iosfwd>

namespace magictrap {

// Exit codes: 0 success, 2 usage or input error, 3 numerical failure, 4 dataset validation failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr int kExitDataset = 4;

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace magictrap
