#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gridposet::cli {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int {
    exit_ok = 0,
    exit_violation = 1,
    exit_usage = 2,
    exit_cap = 3,
};

/// Environment variable holding the default enumeration cap.
inline constexpr const char* kCapEnv = "GRIDPOSET_CAP";

/// Runs one invocation. args excludes the program name. Records go to `out`
/// (or to --out when given), diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridposet::cli
