#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace transit::ingest::detail {

/// Minimal RFC 4180 reader: header row required, quoted fields with "" escapes,
/// CRLF tolerated, UTF-8 BOM stripped. Quoted fields may not span lines.
class CsvReader {
 public:
  explicit CsvReader(const std::filesystem::path& path);

  /// Reads the next non-blank row; false at end of file.
  bool next();

  /// Column index by header name, if present.
  [[nodiscard]] std::optional<std::size_t> column(std::string_view name) const;
  /// Column index; throws IngestError naming the file if the header lacks it.
  [[nodiscard]] std::size_t require_column(std::string_view name) const;

  [[nodiscard]] std::string_view field(std::size_t index) const;
  [[nodiscard]] std::size_t line() const { return line_; }
  [[nodiscard]] const std::string& file_name() const { return file_name_; }

  /// Throws IngestError "<file>:<line>: <message>".
  [[noreturn]] void fail(std::string_view message) const;

 private:
  void split(const std::string& text);

  std::ifstream in_;
  std::string file_name_;
  std::size_t line_ = 0;
  std::unordered_map<std::string, std::size_t> header_;
  std::vector<std::string> fields_;
};

}  // namespace transit::ingest::detail
