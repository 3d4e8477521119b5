#pragma once

#include <map>
#include <string>

namespace projdim {

enum class DimensionMethod { pressure_root, zeta_exponent, lyapunov, covering, box_count, empirical_entropy };
std::string to_string(DimensionMethod m);

/// A dimension value with a bracket. Invariant: bracket_lo <= value <= bracket_hi
/// (either end may be infinite for one-sided bounds).
struct DimensionEstimate {
  double value = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int depth = 0;
  DimensionMethod method = DimensionMethod::pressure_root;
  std::map<std::string, double> diagnostics;
  std::map<std::string, std::string> notes;
};

}  // namespace projdim
