#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "transit/timetable.hpp"

namespace transit::ingest {

/// Line-oriented fixture format (see docs/text-format.md). Trips keep file order
/// within their route, so malformed fixtures survive loading and are reported by
/// validate(). Throws FormatError with the line number on syntax errors.
Timetable read_text(std::istream& in);
Timetable read_text(const std::filesystem::path& path);
Timetable parse_text(std::string_view text);

void write_text(const Timetable& timetable, std::ostream& out);

}  // namespace transit::ingest
