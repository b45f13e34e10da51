#include "csv.hpp"

#include <fmt/format.h>

#include "transit/error.hpp"

namespace transit::ingest::detail {

CsvReader::CsvReader(const std::filesystem::path& path) : in_(path), file_name_(path.filename().string()) {
  if (!in_) throw IngestError(fmt::format("cannot open {}", path.string()));
  if (!next()) throw IngestError(fmt::format("{}: missing header row", file_name_));
  for (std::size_t i = 0; i < fields_.size(); ++i) {
    std::string name = fields_[i];
    if (i == 0 && name.starts_with("\xEF\xBB\xBF")) name.erase(0, 3);
    header_.emplace(std::move(name), i);
  }
}

bool CsvReader::next() {
  std::string text;
  while (std::getline(in_, text)) {
    ++line_;
    if (!text.empty() && text.back() == '\r') text.pop_back();
    if (text.find_first_not_of(" \t") == std::string::npos) continue;
    split(text);
    return true;
  }
  return false;
}

void CsvReader::split(const std::string& text) {
  fields_.clear();
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        current.push_back('"');
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields_.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  if (quoted) fail("unterminated quoted field");
  fields_.push_back(std::move(current));
}

std::optional<std::size_t> CsvReader::column(std::string_view name) const {
  const auto it = header_.find(std::string(name));
  if (it == header_.end()) return std::nullopt;
  return it->second;
}

std::size_t CsvReader::require_column(std::string_view name) const {
  if (const auto c = column(name)) return *c;
  throw IngestError(fmt::format("{}: missing required column '{}'", file_name_, name));
}

std::string_view CsvReader::field(std::size_t index) const {
  if (index >= fields_.size()) fail(fmt::format("expected at least {} fields, found {}", index + 1, fields_.size()));
  return fields_[index];
}

void CsvReader::fail(std::string_view message) const {
  throw IngestError(fmt::format("{}:{}: {}", file_name_, line_, message));
}

}  // namespace transit::ingest::detail
