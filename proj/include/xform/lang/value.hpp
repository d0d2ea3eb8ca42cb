#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace xform::lang {

struct Value;
using List = std::vector<Value>;
using ListPtr = std::shared_ptr<const List>;

/// Runtime value. Lists are immutable and shared; updates build new lists.
struct Value {
  std::variant<std::monostate, bool, std::int64_t, double, std::string, ListPtr> data;

  Value() = default;
  Value(bool b) : data(b) {}
  Value(std::int64_t i) : data(i) {}
  Value(int i) : data(static_cast<std::int64_t>(i)) {}
  Value(double d) : data(d) {}
  Value(std::string s) : data(std::move(s)) {}
  Value(const char* s) : data(std::string(s)) {}
  Value(List l) : data(std::make_shared<const List>(std::move(l))) {}
  Value(ListPtr l) : data(std::move(l)) {}

  [[nodiscard]] bool is_nil() const noexcept { return data.index() == 0; }
  [[nodiscard]] bool is_bool() const noexcept { return data.index() == 1; }
  [[nodiscard]] bool is_int() const noexcept { return data.index() == 2; }
  [[nodiscard]] bool is_real() const noexcept { return data.index() == 3; }
  [[nodiscard]] bool is_number() const noexcept { return is_int() || is_real(); }
  [[nodiscard]] bool is_str() const noexcept { return data.index() == 4; }
  [[nodiscard]] bool is_list() const noexcept { return data.index() == 5; }

  [[nodiscard]] bool as_bool() const { return std::get<bool>(data); }
  [[nodiscard]] std::int64_t as_int() const { return std::get<std::int64_t>(data); }
  [[nodiscard]] double as_real() const { return std::get<double>(data); }
  [[nodiscard]] double as_number() const { return is_int() ? static_cast<double>(as_int()) : as_real(); }
  [[nodiscard]] const std::string& as_str() const { return std::get<std::string>(data); }
  [[nodiscard]] const List& as_list() const { return *std::get<ListPtr>(data); }
};

const char* type_name(const Value& v) noexcept;

/// Ints and reals compare numerically; other kinds compare structurally.
bool values_equal(const Value& a, const Value& b);

/// Text form used for results and str(): ints in decimal, reals in shortest
/// round-trip form, booleans as true/false. Returns false for nil and lists.
bool to_text(const Value& v, std::string& out);

}  // namespace xform::lang
