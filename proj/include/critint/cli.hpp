#pragma once

// Command-line front end. `run` is the whole program minus process setup so
// tests can drive it with captured streams.

#include "critint/rat.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace critint::cli {

/// Exit codes: 0 success / integrable, 10 non-integrable, 1 error,
/// 2 numeric run stopped early (outputs up to that point are written).
inline constexpr int kExitOk = 0;
inline constexpr int kExitNonIntegrable = 10;
inline constexpr int kExitError = 1;
inline constexpr int kExitStoppedEarly = 2;

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// "1,5/2,-3" -> exact rationals; decimals are rejected.
std::vector<Rat> parse_rat_list(std::string_view text);
std::vector<double> parse_double_list(std::string_view text);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace critint::cli
