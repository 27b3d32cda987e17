#include "spotplan/money.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

namespace spotplan {

Money Money::parse(std::string_view text) {
  auto fail = [&]() -> Money {
    throw std::invalid_argument("invalid decimal amount '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    ++pos;
  }

  std::int64_t whole = 0;
  std::size_t whole_digits = 0;
  for (; pos < text.size() && text[pos] != '.'; ++pos) {
    char ch = text[pos];
    if (ch < '0' || ch > '9') return fail();
    if (whole > (std::numeric_limits<std::int64_t>::max() / kScale - 9) / 10) return fail();
    whole = whole * 10 + (ch - '0');
    ++whole_digits;
  }

  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (pos < text.size()) {
    ++pos;  // '.'
    for (; pos < text.size(); ++pos) {
      char ch = text[pos];
      if (ch < '0' || ch > '9') return fail();
      if (frac_digits == 4) {
        if (ch != '0') {
          throw std::invalid_argument("amount '" + std::string(text) +
                                      "' has more than 4 fractional digits");
        }
        continue;
      }
      frac = frac * 10 + (ch - '0');
      ++frac_digits;
    }
  }
  if (whole_digits == 0 && frac_digits == 0) return fail();
  for (std::size_t i = frac_digits; i < 4; ++i) frac *= 10;

  std::int64_t units = whole * kScale + frac;
  return from_units(negative ? -units : units);
}

Money Money::from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("amount is not a finite number");
  }
  const double scaled = value * kScale;
  const double rounded = std::round(scaled);
  if (std::fabs(rounded) > 9.0e15) {
    throw std::invalid_argument("amount out of range");
  }
  if (std::fabs(scaled - rounded) > 1e-7 * std::max(1.0, std::fabs(rounded))) {
    throw std::invalid_argument("amount " + std::to_string(value) +
                                " has more than 4 fractional digits");
  }
  return from_units(static_cast<std::int64_t>(rounded));
}

std::string Money::to_string() const {
  const std::int64_t abs_units = units_ < 0 ? -units_ : units_;
  std::string out = units_ < 0 ? "-" : "";
  out += std::to_string(abs_units / kScale);
  std::int64_t frac = abs_units % kScale;
  if (frac != 0) {
    std::string digits = std::to_string(frac);
    digits.insert(0, 4 - digits.size(), '0');
    while (digits.back() == '0') digits.pop_back();
    out += '.';
    out += digits;
  }
  return out;
}

}  // namespace spotplan
