#pragma once

#include <filesystem>
#include <iosfwd>

#include "transit/timetable.hpp"

namespace transit::ingest {

inline constexpr std::uint32_t kNativeFormatVersion = 1;

/// Writes the versioned "TPRN" container (layout in docs/native-format.md).
void write_native(const Timetable& timetable, std::ostream& out);
void write_native(const Timetable& timetable, const std::filesystem::path& path);

/// Reads a "TPRN" container. Throws FormatError on bad magic, unsupported
/// version, truncation or inconsistent sections.
Timetable read_native(std::istream& in);
Timetable read_native(const std::filesystem::path& path);

}  // namespace transit::ingest
