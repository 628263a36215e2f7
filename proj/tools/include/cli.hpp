#pragma once

// hs-mc command implementations. Each command writes to `out`/`err` and
// returns the process exit code:
//   0 SAT / success, 1 UNSAT, 2 usage or input error, 3 internal invariant violation.

#include <iosfwd>
#include <string>
#include <vector>

namespace hsmc::cli {

inline constexpr int kExitSat = 0;
inline constexpr int kExitUnsat = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitInternal = 3;

/// Stdout format version, also reported in JSON output.
inline constexpr int kFormatVersion = 1;

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hsmc::cli
