#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace projdim {

enum class Errc {
  singular_input,
  domain_error,
  budget_exceeded,
  not_contracting,
  not_positive,
  no_sign_change,
  degenerate_gap,
  denominator_zero,
  bad_direction,
  bad_vector,
  degenerate_spectrum,
  too_few_scales,
  not_traceless,
  validation,
};

std::string_view to_string(Errc code) noexcept;

// All library failures are reported through this type; `code()` lets callers
// (the CLI in particular) map failures onto exit statuses.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

inline std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::singular_input: return "SingularInput";
    case Errc::domain_error: return "DomainError";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::not_contracting: return "NotContracting";
    case Errc::not_positive: return "NotPositive";
    case Errc::no_sign_change: return "NoSignChange";
    case Errc::degenerate_gap: return "DegenerateGap";
    case Errc::denominator_zero: return "DenominatorZero";
    case Errc::bad_direction: return "BadDirection";
    case Errc::bad_vector: return "BadVector";
    case Errc::degenerate_spectrum: return "DegenerateSpectrum";
    case Errc::too_few_scales: return "TooFewScales";
    case Errc::not_traceless: return "NotTraceless";
    case Errc::validation: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace projdim
