#include "xform/lang/builtins.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "xform/lang/diagnostics.hpp"
#include "xform/table/numeric_text.hpp"
#include "xform/table/utf8.hpp"

namespace xform::lang {

const char* type_name(const Value& v) noexcept {
  switch (v.data.index()) {
    case 0: return "nil";
    case 1: return "bool";
    case 2: return "int";
    case 3: return "real";
    case 4: return "string";
    default: return "list";
  }
}

bool values_equal(const Value& a, const Value& b) {
  if (a.is_number() && b.is_number()) {
    if (a.is_int() && b.is_int()) return a.as_int() == b.as_int();
    return a.as_number() == b.as_number();
  }
  if (a.data.index() != b.data.index()) return false;
  if (a.is_nil()) return true;
  if (a.is_bool()) return a.as_bool() == b.as_bool();
  if (a.is_str()) return a.as_str() == b.as_str();
  const auto& la = a.as_list();
  const auto& lb = b.as_list();
  if (la.size() != lb.size()) return false;
  for (std::size_t i = 0; i < la.size(); ++i) {
    if (!values_equal(la[i], lb[i])) return false;
  }
  return true;
}

bool to_text(const Value& v, std::string& out) {
  if (v.is_str()) {
    out = v.as_str();
  } else if (v.is_int()) {
    out = std::to_string(v.as_int());
  } else if (v.is_real()) {
    out = format_shortest(v.as_real());
  } else if (v.is_bool()) {
    out = v.as_bool() ? "true" : "false";
  } else {
    return false;
  }
  return true;
}

const char* to_string(Ty t) noexcept {
  switch (t) {
    case Ty::Any: return "any";
    case Ty::Nil: return "nil";
    case Ty::Bool: return "bool";
    case Ty::Int: return "int";
    case Ty::Real: return "real";
    case Ty::Num: return "number";
    case Ty::Str: return "string";
    case Ty::List: return "list";
    case Ty::Seq: return "string or list";
  }
  return "any";
}

bool compatible(Ty actual, Ty expected) noexcept {
  if (actual == Ty::Any || expected == Ty::Any || actual == expected) return true;
  switch (expected) {
    case Ty::Num: return actual == Ty::Int || actual == Ty::Real;
    case Ty::Seq: return actual == Ty::Str || actual == Ty::List;
    case Ty::Int: return actual == Ty::Num;  // may hold an int at run time
    case Ty::Real: return actual == Ty::Num || actual == Ty::Int;
    case Ty::Str:
    case Ty::List: return actual == Ty::Seq;
    default: return false;
  }
}

namespace {

using Args = std::span<const Value>;

[[noreturn]] void fault(const std::string& msg, const Span& at) { throw LangError(ErrorCode::RuntimeFault, msg, at); }

const std::string& want_str(const Value& v, std::string_view fn, const Span& at) {
  if (!v.is_str()) fault(std::string(fn) + " expects a string, got " + type_name(v), at);
  return v.as_str();
}

std::int64_t want_int(const Value& v, std::string_view fn, const Span& at) {
  if (v.is_int()) return v.as_int();
  fault(std::string(fn) + " expects an integer, got " + type_name(v), at);
}

double want_num(const Value& v, std::string_view fn, const Span& at) {
  if (!v.is_number()) fault(std::string(fn) + " expects a number, got " + type_name(v), at);
  return v.as_number();
}

const List& want_list(const Value& v, std::string_view fn, const Span& at) {
  if (!v.is_list()) fault(std::string(fn) + " expects a list, got " + type_name(v), at);
  return v.as_list();
}

Value finite_real(double r, std::string_view fn, const Span& at) {
  if (!std::isfinite(r)) fault(std::string(fn) + " result is not finite", at);
  return Value(r);
}

std::int64_t to_int64(double r, std::string_view fn, const Span& at) {
  // 2^63 is exactly representable; anything at or above it overflows.
  if (!std::isfinite(r) || r >= 9223372036854775808.0 || r < -9223372036854775808.0) {
    fault(std::string(fn) + " result does not fit a 64-bit integer", at);
  }
  return static_cast<std::int64_t>(r);
}

Value make_str(std::string s, EvalContext& ctx, const Span& at) {
  ctx.check_length(s.size(), at);
  return Value(std::move(s));
}

Value make_list(List l, EvalContext& ctx, const Span& at) {
  ctx.check_length(l.size(), at);
  return Value(std::move(l));
}

// Python-style index: negative counts from the end.
std::size_t norm_index(std::int64_t i, std::size_t len, std::string_view fn, const Span& at) {
  const auto n = static_cast<std::int64_t>(len);
  const std::int64_t k = i < 0 ? i + n : i;
  if (k < 0 || k >= n) fault(std::string(fn) + ": index " + std::to_string(i) + " out of range for length " + std::to_string(len), at);
  return static_cast<std::size_t>(k);
}

std::pair<std::size_t, std::size_t> clamp_slice(std::optional<std::int64_t> lo, std::optional<std::int64_t> hi,
                                                std::size_t len) {
  const auto n = static_cast<std::int64_t>(len);
  auto fix = [n](std::int64_t v) { return std::clamp(v < 0 ? v + n : v, std::int64_t{0}, n); };
  const std::int64_t a = lo ? fix(*lo) : 0;
  const std::int64_t b = hi ? fix(*hi) : n;
  return {static_cast<std::size_t>(a), static_cast<std::size_t>(std::max(a, b))};
}

char32_t lower_cp(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  return c;
}

char32_t upper_cp(char32_t c) {
  if (c >= 'a' && c <= 'z') return c - 32;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 32;
  return c;
}

bool is_space_cp(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_alpha_cp(char32_t c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= 0xC0 && c <= 0x24F && c != 0xD7 && c != 0xF7);
}

int digit_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'z') return c - 'a' + 10;
  if (c >= 'A' && c <= 'Z') return c - 'A' + 10;
  return 99;
}

// --- string builtins -------------------------------------------------------

Value b_split(Args a, EvalContext& ctx, const Span& at) {
  const std::string& s = want_str(a[0], "split", at);
  List out;
  if (a.size() == 1) {
    std::size_t i = 0;
    while (i < s.size()) {
      while (i < s.size() && is_space_cp(static_cast<unsigned char>(s[i]))) ++i;
      const std::size_t start = i;
      while (i < s.size() && !is_space_cp(static_cast<unsigned char>(s[i]))) ++i;
      if (i > start) out.emplace_back(s.substr(start, i - start));
    }
    return make_list(std::move(out), ctx, at);
  }
  const std::string& sep = want_str(a[1], "split", at);
  if (sep.empty()) fault("split separator is empty; use to_chars", at);
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    if (pos == std::string::npos) {
      out.emplace_back(s.substr(start));
      break;
    }
    out.emplace_back(s.substr(start, pos - start));
    start = pos + sep.size();
    ctx.check_length(out.size(), at);
  }
  return make_list(std::move(out), ctx, at);
}

Value b_join(Args a, EvalContext& ctx, const Span& at) {
  const List& items = want_list(a[0], "join", at);
  const std::string& sep = want_str(a[1], "join", at);
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i > 0) out += sep;
    std::string piece;
    if (!to_text(items[i], piece)) fault(std::string("join cannot render a ") + type_name(items[i]), at);
    out += piece;
    ctx.check_length(out.size(), at);
  }
  return make_str(std::move(out), ctx, at);
}

Value slice_value(const Value& base, std::optional<std::int64_t> lo, std::optional<std::int64_t> hi,
                  EvalContext& ctx, const Span& at) {
  if (base.is_str()) {
    const auto cps = utf8::decode(base.as_str());
    const auto [b, e] = clamp_slice(lo, hi, cps.size());
    return make_str(utf8::encode(std::u32string_view(cps).substr(b, e - b)), ctx, at);
  }
  if (base.is_list()) {
    const List& l = base.as_list();
    const auto [b, e] = clamp_slice(lo, hi, l.size());
    return make_list(List(l.begin() + static_cast<std::ptrdiff_t>(b), l.begin() + static_cast<std::ptrdiff_t>(e)), ctx, at);
  }
  fault(std::string("cannot slice a ") + type_name(base), at);
}

Value b_substring(Args a, EvalContext& ctx, const Span& at) {
  want_str(a[0], "substring", at);
  const std::int64_t lo = want_int(a[1], "substring", at);
  std::optional<std::int64_t> hi;
  if (a.size() > 2) hi = want_int(a[2], "substring", at);
  return slice_value(a[0], lo, hi, ctx, at);
}

Value b_char_at(Args a, EvalContext& ctx, const Span& at) {
  const auto cps = utf8::decode(want_str(a[0], "char_at", at));
  const std::size_t k = norm_index(want_int(a[1], "char_at", at), cps.size(), "char_at", at);
  return make_str(utf8::encode(std::u32string_view(cps).substr(k, 1)), ctx, at);
}

Value b_index_of(Args a, EvalContext&, const Span& at) {
  std::int64_t from = a.size() > 2 ? want_int(a[2], "index_of", at) : 0;
  if (from < 0) from = 0;
  if (a[0].is_list()) {
    const List& l = a[0].as_list();
    for (auto i = static_cast<std::size_t>(from); i < l.size(); ++i) {
      if (values_equal(l[i], a[1])) return Value(static_cast<std::int64_t>(i));
    }
    return Value(std::int64_t{-1});
  }
  const auto hay = utf8::decode(want_str(a[0], "index_of", at));
  const auto needle = utf8::decode(want_str(a[1], "index_of", at));
  if (static_cast<std::size_t>(from) > hay.size()) return Value(std::int64_t{-1});
  const auto pos = hay.find(needle, static_cast<std::size_t>(from));
  return Value(pos == std::u32string::npos ? std::int64_t{-1} : static_cast<std::int64_t>(pos));
}

Value b_replace(Args a, EvalContext& ctx, const Span& at) {
  const std::string& s = want_str(a[0], "replace", at);
  const std::string& from = want_str(a[1], "replace", at);
  const std::string& to = want_str(a[2], "replace", at);
  if (from.empty()) fault("replace pattern is empty", at);
  std::string out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(from, start);
    if (pos == std::string::npos) break;
    out.append(s, start, pos - start);
    out += to;
    start = pos + from.size();
    ctx.check_length(out.size(), at);
  }
  out.append(s, start);
  return make_str(std::move(out), ctx, at);
}

Value map_cps(const std::string& s, char32_t (*f)(char32_t), EvalContext& ctx, const Span& at) {
  auto cps = utf8::decode(s);
  for (auto& c : cps) c = f(c);
  return make_str(utf8::encode(cps), ctx, at);
}

Value b_lower(Args a, EvalContext& ctx, const Span& at) { return map_cps(want_str(a[0], "lower", at), lower_cp, ctx, at); }
Value b_upper(Args a, EvalContext& ctx, const Span& at) { return map_cps(want_str(a[0], "upper", at), upper_cp, ctx, at); }

Value b_trim(Args a, EvalContext&, const Span& at) {
  const std::string& s = want_str(a[0], "trim", at);
  return Value(std::string(trim(s)));
}

Value pad(Args a, bool left, EvalContext& ctx, const Span& at) {
  const char* fn = left ? "pad_left" : "pad_right";
  const std::string& s = want_str(a[0], fn, at);
  const std::int64_t width = want_int(a[1], fn, at);
  std::string fill = " ";
  if (a.size() > 2) fill = want_str(a[2], fn, at);
  if (utf8::length(fill) != 1) fault(std::string(fn) + " fill must be a single character", at);
  const auto len = static_cast<std::int64_t>(utf8::length(s));
  if (width <= len) return Value(s);
  const auto missing = static_cast<std::size_t>(width - len);
  ctx.check_length(missing * fill.size() + s.size(), at);
  std::string padding;
  for (std::size_t i = 0; i < missing; ++i) padding += fill;
  return make_str(left ? padding + s : s + padding, ctx, at);
}

Value b_pad_left(Args a, EvalContext& ctx, const Span& at) { return pad(a, true, ctx, at); }
Value b_pad_right(Args a, EvalContext& ctx, const Span& at) { return pad(a, false, ctx, at); }

Value b_length(Args a, EvalContext&, const Span& at) {
  if (a[0].is_list()) return Value(static_cast<std::int64_t>(a[0].as_list().size()));
  return Value(static_cast<std::int64_t>(utf8::length(want_str(a[0], "length", at))));
}

Value b_starts_with(Args a, EvalContext&, const Span& at) {
  return Value(want_str(a[0], "starts_with", at).starts_with(want_str(a[1], "starts_with", at)));
}

Value b_ends_with(Args a, EvalContext&, const Span& at) {
  return Value(want_str(a[0], "ends_with", at).ends_with(want_str(a[1], "ends_with", at)));
}

Value b_reverse(Args a, EvalContext& ctx, const Span& at) {
  if (a[0].is_list()) {
    List l = a[0].as_list();
    std::reverse(l.begin(), l.end());
    return make_list(std::move(l), ctx, at);
  }
  auto cps = utf8::decode(want_str(a[0], "reverse", at));
  std::reverse(cps.begin(), cps.end());
  return make_str(utf8::encode(cps), ctx, at);
}

Value b_to_chars(Args a, EvalContext& ctx, const Span& at) {
  List out;
  for (char32_t c : utf8::decode(want_str(a[0], "to_chars", at))) {
    std::string one;
    utf8::append(one, c);
    out.emplace_back(std::move(one));
  }
  return make_list(std::move(out), ctx, at);
}

Value b_from_codepoint(Args a, EvalContext&, const Span& at) {
  const std::int64_t cp = want_int(a[0], "from_codepoint", at);
  if (cp < 0 || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
    fault("from_codepoint: " + std::to_string(cp) + " is not a Unicode scalar value", at);
  }
  std::string out;
  utf8::append(out, static_cast<char32_t>(cp));
  return Value(std::move(out));
}

Value b_to_codepoint(Args a, EvalContext&, const Span& at) {
  const auto cps = utf8::decode(want_str(a[0], "to_codepoint", at));
  if (cps.size() != 1) fault("to_codepoint expects exactly one character", at);
  return Value(static_cast<std::int64_t>(cps[0]));
}

Value b_contains(Args a, EvalContext&, const Span& at) {
  if (a[0].is_list()) {
    for (const auto& v : a[0].as_list()) {
      if (values_equal(v, a[1])) return Value(true);
    }
    return Value(false);
  }
  return Value(want_str(a[0], "contains", at).find(want_str(a[1], "contains", at)) != std::string::npos);
}

Value b_str(Args a, EvalContext&, const Span& at) {
  std::string out;
  if (!to_text(a[0], out)) fault(std::string("str cannot render a ") + type_name(a[0]), at);
  return Value(std::move(out));
}

template <bool (*Pred)(char32_t)>
Value all_cps(Args a, const char* fn, const Span& at) {
  const auto cps = utf8::decode(want_str(a[0], fn, at));
  if (cps.empty()) return Value(false);
  return Value(std::all_of(cps.begin(), cps.end(), Pred));
}

bool digit_cp(char32_t c) { return c >= '0' && c <= '9'; }
Value b_is_digit(Args a, EvalContext&, const Span& at) { return all_cps<digit_cp>(a, "is_digit", at); }
Value b_is_alpha(Args a, EvalContext&, const Span& at) { return all_cps<is_alpha_cp>(a, "is_alpha", at); }
Value b_is_space(Args a, EvalContext&, const Span& at) { return all_cps<is_space_cp>(a, "is_space", at); }

// --- numeric builtins ------------------------------------------------------

Value b_pow(Args a, EvalContext&, const Span& at) {
  if (a[0].is_int() && a[1].is_int() && a[1].as_int() >= 0) {
    std::int64_t base = a[0].as_int();
    std::int64_t e = a[1].as_int();
    std::int64_t result = 1;
    while (e > 0) {
      if ((e & 1) && __builtin_mul_overflow(result, base, &result)) fault("pow: integer overflow", at);
      e >>= 1;
      if (e > 0 && __builtin_mul_overflow(base, base, &base)) fault("pow: integer overflow", at);
    }
    return Value(result);
  }
  return finite_real(std::pow(want_num(a[0], "pow", at), want_num(a[1], "pow", at)), "pow", at);
}

Value b_exp(Args a, EvalContext&, const Span& at) { return finite_real(std::exp(want_num(a[0], "exp", at)), "exp", at); }

Value b_ln(Args a, EvalContext&, const Span& at) {
  const double v = want_num(a[0], "ln", at);
  if (v <= 0) fault("ln of a non-positive number", at);
  return Value(std::log(v));
}

Value b_floor(Args a, EvalContext&, const Span& at) {
  if (a[0].is_int()) return a[0];
  return Value(to_int64(std::floor(want_num(a[0], "floor", at)), "floor", at));
}

Value b_ceil(Args a, EvalContext&, const Span& at) {
  if (a[0].is_int()) return a[0];
  return Value(to_int64(std::ceil(want_num(a[0], "ceil", at)), "ceil", at));
}

Value b_abs(Args a, EvalContext&, const Span& at) {
  if (a[0].is_int()) {
    if (a[0].as_int() == std::numeric_limits<std::int64_t>::min()) fault("abs: integer overflow", at);
    return Value(a[0].as_int() < 0 ? -a[0].as_int() : a[0].as_int());
  }
  return Value(std::fabs(want_num(a[0], "abs", at)));
}

Value b_round(Args a, EvalContext&, const Span& at) {
  const double v = want_num(a[0], "round", at);
  if (a.size() == 1) {
    if (a[0].is_int()) return a[0];
    return Value(to_int64(round_half_away(v, 0), "round", at));
  }
  const std::int64_t d = want_int(a[1], "round", at);
  if (d < -15 || d > 15) fault("round: decimals must be within [-15, 15]", at);
  if (d < 0) {
    const double scale = std::pow(10.0, static_cast<double>(-d));
    return Value(round_half_away(v / scale, 0) * scale);
  }
  return Value(round_half_away(v, static_cast<int>(d)));
}

Value b_parse_num(Args a, EvalContext&, const Span& at) {
  const std::string_view s = trim(want_str(a[0], "parse_num", at));
  std::size_t i = (!s.empty() && (s[0] == '+' || s[0] == '-')) ? 1 : 0;
  const bool integral = i < s.size() && std::all_of(s.begin() + static_cast<std::ptrdiff_t>(i), s.end(),
                                                    [](char c) { return c >= '0' && c <= '9'; });
  if (integral) {
    std::int64_t v = 0;
    const bool neg = s[0] == '-';
    for (; i < s.size(); ++i) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, neg ? -(s[i] - '0') : (s[i] - '0'), &v)) {
        fault("parse_num: integer does not fit 64 bits", at);
      }
    }
    return Value(v);
  }
  const auto v = parse_numeric(s);
  if (!v) fault("parse_num: \"" + std::string(s) + "\" is not a number", at);
  return Value(*v);
}

Value b_format_num(Args a, EvalContext&, const Span& at) {
  const double v = want_num(a[0], "format_num", at);
  const std::int64_t d = want_int(a[1], "format_num", at);
  if (d < 0 || d > 20) fault("format_num: decimals must be within [0, 20]", at);
  return Value(format_fixed(v, static_cast<int>(d)));
}

Value b_parse_int(Args a, EvalContext&, const Span& at) {
  std::string_view s = trim(want_str(a[0], "parse_int", at));
  const std::int64_t base = a.size() > 1 ? want_int(a[1], "parse_int", at) : 10;
  if (base < 2 || base > 36) fault("parse_int: base must be within [2, 36]", at);
  bool neg = false;
  if (!s.empty() && (s[0] == '+' || s[0] == '-')) {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  if (s.size() > 2 && s[0] == '0') {
    const char p = static_cast<char>(s[1] | 0x20);
    if ((p == 'x' && base == 16) || (p == 'b' && base == 2) || (p == 'o' && base == 8)) s.remove_prefix(2);
  }
  if (s.empty()) fault("parse_int: no digits", at);
  std::int64_t v = 0;
  for (char c : s) {
    const int d = digit_value(c);
    if (d >= base) fault("parse_int: '" + std::string(1, c) + "' is not a base-" + std::to_string(base) + " digit", at);
    if (__builtin_mul_overflow(v, base, &v) || __builtin_add_overflow(v, neg ? -d : d, &v)) {
      fault("parse_int: value does not fit 64 bits", at);
    }
  }
  return Value(v);
}

Value b_format_int(Args a, EvalContext&, const Span& at) {
  std::int64_t v = want_int(a[0], "format_int", at);
  const std::int64_t base = a.size() > 1 ? want_int(a[1], "format_int", at) : 10;
  if (base < 2 || base > 36) fault("format_int: base must be within [2, 36]", at);
  static constexpr char kDigits[] = "0123456789abcdefghijklmnopqrstuvwxyz";
  const bool neg = v < 0;
  // Work in unsigned magnitude so INT64_MIN formats correctly.
  auto mag = neg ? static_cast<unsigned long long>(-(v + 1)) + 1 : static_cast<unsigned long long>(v);
  std::string out;
  do {
    out.push_back(kDigits[mag % static_cast<unsigned long long>(base)]);
    mag /= static_cast<unsigned long long>(base);
  } while (mag > 0);
  if (neg) out.push_back('-');
  std::reverse(out.begin(), out.end());
  return Value(std::move(out));
}

int compare_ordered(const Value& x, const Value& y, const char* fn, const Span& at) {
  if (x.is_number() && y.is_number()) {
    if (x.is_int() && y.is_int()) return x.as_int() < y.as_int() ? -1 : (x.as_int() > y.as_int() ? 1 : 0);
    return x.as_number() < y.as_number() ? -1 : (x.as_number() > y.as_number() ? 1 : 0);
  }
  if (x.is_str() && y.is_str()) return x.as_str().compare(y.as_str()) < 0 ? -1 : (x.as_str() == y.as_str() ? 0 : 1);
  fault(std::string(fn) + " cannot order " + type_name(x) + " and " + type_name(y), at);
}

Value extreme(Args a, bool want_max, const char* fn, const Span& at) {
  std::vector<Value> items;
  if (a.size() == 1) {
    const List& l = want_list(a[0], fn, at);
    if (l.empty()) fault(std::string(fn) + " of an empty list", at);
    items.assign(l.begin(), l.end());
  } else {
    items.assign(a.begin(), a.end());
  }
  Value best = items[0];
  for (std::size_t i = 1; i < items.size(); ++i) {
    const int c = compare_ordered(items[i], best, fn, at);
    if (want_max ? c > 0 : c < 0) best = items[i];
  }
  return best;
}

Value b_min(Args a, EvalContext&, const Span& at) { return extreme(a, false, "min", at); }
Value b_max(Args a, EvalContext&, const Span& at) { return extreme(a, true, "max", at); }

Value b_int(Args a, EvalContext& ctx, const Span& at) {
  const Value& v = a[0];
  if (v.is_int()) return v;
  if (v.is_bool()) return Value(std::int64_t{v.as_bool() ? 1 : 0});
  if (v.is_real()) return Value(to_int64(std::trunc(v.as_real()), "int", at));
  if (v.is_str()) {
    const Value args[] = {v, Value(std::int64_t{10})};
    return b_parse_int(args, ctx, at);
  }
  fault(std::string("int cannot convert a ") + type_name(v), at);
}

Value b_range(Args a, EvalContext& ctx, const Span& at) {
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  if (a.size() == 1) {
    hi = want_int(a[0], "range", at);
  } else {
    lo = want_int(a[0], "range", at);
    hi = want_int(a[1], "range", at);
  }
  if (hi <= lo) return Value(List{});
  const auto n = static_cast<unsigned long long>(hi) - static_cast<unsigned long long>(lo);
  if (n > ctx.limits().max_string_len) {
    throw LangError(ErrorCode::OutputTooLong, "range of " + std::to_string(n) + " elements exceeds the list limit", at);
  }
  ctx.charge(n / 16, at);
  List out;
  out.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = lo; i < hi; ++i) out.emplace_back(i);
  return Value(std::move(out));
}

constexpr Ty A = Ty::Any;
constexpr Ty S = Ty::Str;
constexpr Ty I = Ty::Int;
constexpr Ty N = Ty::Num;
constexpr Ty L = Ty::List;
constexpr Ty Q = Ty::Seq;

const BuiltinInfo kBuiltins[] = {
    {"split", 1, 2, {S, S, A}, L, b_split, "split(s, sep) -> list; split(s) splits on whitespace"},
    {"join", 2, 2, {L, S, A}, S, b_join, "join(list, sep) -> string"},
    {"substring", 2, 3, {S, I, I}, S, b_substring, "substring(s, start, end?) -> string (same as s[start:end])"},
    {"char_at", 2, 2, {S, I, A}, S, b_char_at, "char_at(s, i) -> one-character string"},
    {"index_of", 2, 3, {Q, A, I}, I, b_index_of, "index_of(s_or_list, item, from?) -> int, -1 if absent"},
    {"replace", 3, 3, {S, S, S}, S, b_replace, "replace(s, old, new) -> string, all occurrences"},
    {"lower", 1, 1, {S, A, A}, S, b_lower, "lower(s) -> string"},
    {"upper", 1, 1, {S, A, A}, S, b_upper, "upper(s) -> string"},
    {"trim", 1, 1, {S, A, A}, S, b_trim, "trim(s) -> string without surrounding whitespace"},
    {"pad_left", 2, 3, {S, I, S}, S, b_pad_left, "pad_left(s, width, fill?) -> string"},
    {"pad_right", 2, 3, {S, I, S}, S, b_pad_right, "pad_right(s, width, fill?) -> string"},
    {"length", 1, 1, {Q, A, A}, I, b_length, "length(s_or_list) -> int"},
    {"starts_with", 2, 2, {S, S, A}, Ty::Bool, b_starts_with, "starts_with(s, prefix) -> bool"},
    {"ends_with", 2, 2, {S, S, A}, Ty::Bool, b_ends_with, "ends_with(s, suffix) -> bool"},
    {"reverse", 1, 1, {Q, A, A}, Ty::Any, b_reverse, "reverse(s_or_list) -> same kind"},
    {"to_chars", 1, 1, {S, A, A}, L, b_to_chars, "to_chars(s) -> list of one-character strings"},
    {"from_codepoint", 1, 1, {I, A, A}, S, b_from_codepoint, "from_codepoint(n) -> one-character string"},
    {"to_codepoint", 1, 1, {S, A, A}, I, b_to_codepoint, "to_codepoint(c) -> int"},
    {"contains", 2, 2, {Q, A, A}, Ty::Bool, b_contains, "contains(s_or_list, item) -> bool"},
    {"str", 1, 1, {A, A, A}, S, b_str, "str(v) -> string"},
    {"is_digit", 1, 1, {S, A, A}, Ty::Bool, b_is_digit, "is_digit(s) -> bool"},
    {"is_alpha", 1, 1, {S, A, A}, Ty::Bool, b_is_alpha, "is_alpha(s) -> bool"},
    {"is_space", 1, 1, {S, A, A}, Ty::Bool, b_is_space, "is_space(s) -> bool"},
    {"pow", 2, 2, {N, N, A}, N, b_pow, "pow(a, b) -> number"},
    {"exp", 1, 1, {N, A, A}, Ty::Real, b_exp, "exp(a) -> real"},
    {"ln", 1, 1, {N, A, A}, Ty::Real, b_ln, "ln(a) -> real"},
    {"floor", 1, 1, {N, A, A}, I, b_floor, "floor(a) -> int"},
    {"ceil", 1, 1, {N, A, A}, I, b_ceil, "ceil(a) -> int"},
    {"abs", 1, 1, {N, A, A}, N, b_abs, "abs(a) -> number"},
    {"round", 1, 2, {N, I, A}, N, b_round, "round(v) -> int; round(v, decimals) -> real, half away from zero"},
    {"parse_num", 1, 1, {S, A, A}, N, b_parse_num, "parse_num(s) -> int or real"},
    {"format_num", 2, 2, {N, I, A}, S, b_format_num, "format_num(v, decimals) -> string with fixed decimals"},
    {"parse_int", 1, 2, {S, I, A}, I, b_parse_int, "parse_int(s, base?) -> int"},
    {"format_int", 1, 2, {I, I, A}, S, b_format_int, "format_int(n, base?) -> string, lowercase digits"},
    {"min", 1, 2, {A, A, A}, Ty::Any, b_min, "min(a, b) or min(list)"},
    {"max", 1, 2, {A, A, A}, Ty::Any, b_max, "max(a, b) or max(list)"},
    {"int", 1, 1, {A, A, A}, I, b_int, "int(v) -> int, truncating reals"},
    {"range", 1, 2, {I, I, A}, L, b_range, "range(n) or range(lo, hi) -> list of ints"},
};

}  // namespace

const BuiltinInfo* find_builtin(std::string_view name) noexcept {
  for (const auto& b : kBuiltins) {
    if (b.name == name) return &b;
  }
  return nullptr;
}

std::span<const BuiltinInfo> all_builtins() noexcept { return kBuiltins; }

}  // namespace xform::lang
