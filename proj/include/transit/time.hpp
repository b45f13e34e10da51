#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace transit {

/// Non-negative span of seconds.
class Duration {
 public:
  using rep = std::uint32_t;

  constexpr Duration() = default;
  constexpr explicit Duration(rep seconds) : seconds_(seconds) {}

  [[nodiscard]] constexpr rep seconds() const { return seconds_; }

  friend constexpr auto operator<=>(Duration, Duration) = default;

  friend constexpr Duration operator+(Duration a, Duration b) {
    const std::uint64_t sum = std::uint64_t{a.seconds_} + b.seconds_;
    return Duration(sum > std::numeric_limits<rep>::max() ? std::numeric_limits<rep>::max()
                                                          : static_cast<rep>(sum));
  }
  constexpr Duration& operator+=(Duration other) { return *this = *this + other; }

 private:
  rep seconds_ = 0;
};

/// Seconds since the start of the service day. Finite values lie in [0, 2^31);
/// the default-constructed value is the INFINITY sentinel, which compares greater
/// than every finite time. Adding a Duration saturates at INFINITY.
class Time {
 public:
  using rep = std::uint32_t;
  static constexpr rep kFiniteLimit = rep{1} << 31;

  constexpr Time() = default;

  /// Throws std::out_of_range for values outside [0, 2^31).
  static Time from_seconds(std::int64_t seconds);
  static constexpr Time infinity() { return Time(); }

  [[nodiscard]] constexpr bool is_infinite() const { return value_ == kInfinity; }
  [[nodiscard]] constexpr bool is_finite() const { return value_ != kInfinity; }
  /// Raw seconds; only meaningful for finite values.
  [[nodiscard]] constexpr rep seconds() const { return value_; }

  friend constexpr auto operator<=>(Time, Time) = default;

  friend constexpr Time operator+(Time t, Duration d) {
    if (t.is_infinite()) return t;
    const std::uint64_t sum = std::uint64_t{t.value_} + d.seconds();
    Time out;
    if (sum < kFiniteLimit) out.value_ = static_cast<rep>(sum);
    return out;
  }

  /// Elapsed seconds from `earlier` to `later`; both finite and earlier <= later.
  friend constexpr Duration operator-(Time later, Time earlier) {
    return Duration(later.value_ - earlier.value_);
  }

 private:
  static constexpr rep kInfinity = std::numeric_limits<rep>::max();
  rep value_ = kInfinity;
};

/// "HH:MM:SS" with hours allowed past 23 (GTFS convention). Throws std::invalid_argument.
Time parse_time(std::string_view text);
/// Formats as HH:MM:SS; infinity prints as "--:--:--".
std::string format_time(Time t);
/// Formats a duration as HH:MM:SS.
std::string format_duration(Duration d);

}  // namespace transit
