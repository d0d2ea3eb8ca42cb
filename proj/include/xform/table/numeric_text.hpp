#pragma once

#include <optional>
#include <string>
#include <string_view>

// Conversions between cell text and numbers. Everything here is locale-free.
namespace xform {

/// Parses `[+-]? (digits[.digits] | .digits) ([eE][+-]?digits)?` after trimming
/// surrounding whitespace. Grouping separators, hex, inf and nan are rejected.
std::optional<double> parse_numeric(std::string_view text);

/// Digits after the decimal point in a plain numeric literal; exponent shifts it.
int decimal_places(std::string_view text);

/// Shortest text that round-trips `value`. Integral values print without a
/// fractional part; exponent form only outside [1e-7, 1e21).
std::string format_shortest(double value);

/// Rounds half away from zero on the shortest decimal expansion of `value`,
/// so 2.675 rounds to 2.68 even though its binary value is slightly below.
double round_half_away(double value, int decimals);

/// Fixed notation with exactly `decimals` fractional digits, half-away rounded.
std::string format_fixed(double value, int decimals);

std::string_view trim(std::string_view text) noexcept;

}  // namespace xform
