#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "projdim/semigroup.hpp"

namespace projdim {

/// Parses {"label", "matrices", "probabilities", "conjugator"?, "sosc_assumed"?}.
/// Entries are "p/q" strings; probabilities default to uniform when absent.
/// Unknown fields and malformed entries throw Error{validation}; the result is
/// validated before it is returned.
SystemSpec parse_system(std::string_view json_text);
SystemSpec load_system(const std::filesystem::path& path);

/// Inverse of parse_system, pretty-printed with two-space indent.
std::string system_to_json(const SystemSpec& sys);
void save_system(const SystemSpec& sys, const std::filesystem::path& path);

}  // namespace projdim
