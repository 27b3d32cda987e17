#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace spotplan {

/// Hourly price held as an exact count of ten-thousandths of a currency unit.
///
/// Budget comparisons (price <= pricing willingness) are done on the integer
/// representation so that e.g. 0.22 + 4 * 0.066 <= 0.5 never depends on
/// binary rounding.
class Money {
 public:
  static constexpr std::int64_t kScale = 10000;

  constexpr Money() = default;

  static constexpr Money from_units(std::int64_t units) {
    Money m;
    m.units_ = units;
    return m;
  }

  /// Parses a plain decimal literal ("3", "0.1941", "-0.5"). Throws
  /// std::invalid_argument on malformed text or more than 4 fractional digits.
  static Money parse(std::string_view text);

  /// Converts a double that is expected to carry at most 4 fractional digits.
  /// Throws std::invalid_argument if it does not (or is not finite).
  static Money from_double(double value);

  constexpr std::int64_t units() const { return units_; }
  constexpr double to_double() const { return static_cast<double>(units_) / kScale; }

  /// Shortest decimal form: "3", "0.22", "1.622".
  std::string to_string() const;

  constexpr Money operator+(Money o) const { return from_units(units_ + o.units_); }
  constexpr Money operator-(Money o) const { return from_units(units_ - o.units_); }
  constexpr Money operator*(std::int64_t k) const { return from_units(units_ * k); }
  constexpr Money& operator+=(Money o) {
    units_ += o.units_;
    return *this;
  }

  constexpr auto operator<=>(const Money&) const = default;

 private:
  std::int64_t units_ = 0;
};

constexpr Money operator*(std::int64_t k, Money m) { return m * k; }

}  // namespace spotplan
