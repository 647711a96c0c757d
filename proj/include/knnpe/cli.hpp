#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace knnpe {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitData = 3;

/// Runs `knnpe <cv|compare|map> [flags]`; args exclude the program name.
/// Reports go to `out` (or to --out for cv/compare), diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace knnpe
