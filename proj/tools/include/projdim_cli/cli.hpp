#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "projdim/error.hpp"

namespace projdim::cli {

inline constexpr int kReportSchemaVersion = 1;

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;

/// Exit status for a module error.
int exit_code(Errc code);

/// Runs `projdim <args...>` (args exclude the program name). The JSON report
/// goes to `out` unless --report names a file; messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace projdim::cli
