#include "xform/table/numeric_text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace xform {
namespace {

bool is_digit(char c) noexcept { return c >= '0' && c <= '9'; }

bool is_space(char c) noexcept { return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v'; }

// Validates the literal grammar; returns false on anything else.
bool matches_literal(std::string_view s) noexcept {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
  std::size_t int_digits = 0;
  while (i < s.size() && is_digit(s[i])) ++i, ++int_digits;
  std::size_t frac_digits = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && is_digit(s[i])) ++i, ++frac_digits;
  }
  if (int_digits == 0 && frac_digits == 0) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) ++i;
    std::size_t exp_digits = 0;
    while (i < s.size() && is_digit(s[i])) ++i, ++exp_digits;
    if (exp_digits == 0) return false;
  }
  return i == s.size();
}

}  // namespace

std::string_view trim(std::string_view text) noexcept {
  while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
  while (!text.empty() && is_space(text.back())) text.remove_suffix(1);
  return text;
}

std::optional<double> parse_numeric(std::string_view text) {
  std::string_view s = trim(text);
  if (!matches_literal(s)) return std::nullopt;
  if (s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(value)) return std::nullopt;
  return value;
}

int decimal_places(std::string_view text) {
  std::string_view s = trim(text);
  int places = 0;
  const auto dot = s.find('.');
  const auto exp = s.find_first_of("eE");
  if (dot != std::string_view::npos) {
    const auto end = exp == std::string_view::npos ? s.size() : exp;
    places = static_cast<int>(end - dot - 1);
  }
  if (exp != std::string_view::npos) {
    places -= std::atoi(std::string(s.substr(exp + 1)).c_str());
  }
  return places < 0 ? 0 : places;
}

std::string format_shortest(double value) {
  if (value == 0.0) return "0";
  std::array<char, 64> buf{};
  const double mag = std::fabs(value);
  const auto fmt = (mag >= 1e21 || mag < 1e-7) ? std::chars_format::scientific : std::chars_format::fixed;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value, fmt);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), ptr);
}

double round_half_away(double value, int decimals) {
  if (!std::isfinite(value) || value == 0.0) return value;
  std::array<char, 64> buf{};
  const auto [ptr, ec] =
      std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::scientific);
  if (ec != std::errc{}) return value;
  const std::string_view sci(buf.data(), static_cast<std::size_t>(ptr - buf.data()));

  const bool negative = sci.front() == '-';
  const auto e_pos = sci.find('e');
  std::string digits;
  for (char c : sci.substr(0, e_pos)) {
    if (is_digit(c)) digits.push_back(c);
  }
  const int exponent = std::atoi(std::string(sci.substr(e_pos + 1)).c_str());
  const int n = static_cast<int>(digits.size());
  const int fractional = (n - 1) - exponent;
  if (fractional <= decimals) return value;

  const int keep = exponent + 1 + decimals;
  std::string kept;
  bool round_up = false;
  if (keep < 0) {
    return negative ? -0.0 : 0.0;
  } else if (keep == 0) {
    round_up = digits[0] >= '5';
  } else {
    kept = digits.substr(0, static_cast<std::size_t>(keep));
    round_up = digits[static_cast<std::size_t>(keep)] >= '5';
  }
  if (kept.empty()) kept = "0";
  if (round_up) {
    int i = static_cast<int>(kept.size()) - 1;
    while (i >= 0 && kept[static_cast<std::size_t>(i)] == '9') kept[static_cast<std::size_t>(i--)] = '0';
    if (i < 0) {
      kept.insert(kept.begin(), '1');
    } else {
      ++kept[static_cast<std::size_t>(i)];
    }
  }
  const std::string literal = (negative ? "-" : "") + kept + "e" + std::to_string(-decimals);
  double out = 0.0;
  std::from_chars(literal.data(), literal.data() + literal.size(), out);
  return out;
}

std::string format_fixed(double value, int decimals) {
  if (decimals < 0) decimals = 0;
  const double rounded = round_half_away(value, decimals);
  std::array<char, 512> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), rounded,
                                       std::chars_format::fixed, decimals);
  if (ec != std::errc{}) return format_shortest(rounded);
  std::string out(buf.data(), ptr);
  if (out.front() == '-' && out.find_first_not_of("-0.") == std::string::npos) out.erase(0, 1);
  return out;
}

}  // namespace xform
