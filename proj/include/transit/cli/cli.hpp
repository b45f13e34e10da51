#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "transit/timetable.hpp"

namespace transit::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDataError = 1;
inline constexpr int kExitUsageError = 2;

/// Entry point of the transit_prune tool. Data goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Reads a network file, native binary or text fixture (detected by the magic bytes).
/// Text fixtures come back with sorted edges; native files keep their stored order.
/// Throws FormatError when the network fails validation.
Timetable load_network(const std::filesystem::path& path);

/// Stop ids and names close to `query`, best first, at most `limit`.
std::vector<std::string> near_matches(const Timetable& timetable, const std::string& query, std::size_t limit = 5);

}  // namespace transit::cli
