#include "transit/time.hpp"

#include <charconv>
#include <stdexcept>

#include <fmt/format.h>

namespace transit {

Time Time::from_seconds(std::int64_t seconds) {
  if (seconds < 0 || seconds >= std::int64_t{kFiniteLimit}) {
    throw std::out_of_range(fmt::format("time {} s outside [0, 2^31)", seconds));
  }
  Time t;
  t.value_ = static_cast<rep>(seconds);
  return t;
}

namespace {

std::int64_t parse_field(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || value < 0) {
    throw std::invalid_argument(fmt::format("malformed time '{}'", whole));
  }
  return value;
}

}  // namespace

Time parse_time(std::string_view text) {
  std::string_view trimmed = text;
  while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t')) trimmed.remove_prefix(1);
  while (!trimmed.empty() && (trimmed.back() == ' ' || trimmed.back() == '\t' || trimmed.back() == '\r')) {
    trimmed.remove_suffix(1);
  }
  const auto c1 = trimmed.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : trimmed.find(':', c1 + 1);
  if (c1 == std::string_view::npos || c2 == std::string_view::npos) {
    throw std::invalid_argument(fmt::format("malformed time '{}'", text));
  }
  const auto h = parse_field(trimmed.substr(0, c1), text);
  const auto m = parse_field(trimmed.substr(c1 + 1, c2 - c1 - 1), text);
  const auto s = parse_field(trimmed.substr(c2 + 1), text);
  if (m > 59 || s > 59) throw std::invalid_argument(fmt::format("malformed time '{}'", text));
  try {
    return Time::from_seconds(h * 3600 + m * 60 + s);
  } catch (const std::out_of_range&) {
    throw std::invalid_argument(fmt::format("time '{}' out of range", text));
  }
}

std::string format_time(Time t) {
  if (t.is_infinite()) return "--:--:--";
  const auto s = t.seconds();
  return fmt::format("{:02}:{:02}:{:02}", s / 3600, (s / 60) % 60, s % 60);
}

std::string format_duration(Duration d) {
  const auto s = d.seconds();
  return fmt::format("{:02}:{:02}:{:02}", s / 3600, (s / 60) % 60, s % 60);
}

}  // namespace transit
