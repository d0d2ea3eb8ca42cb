#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xform/table/numeric_text.hpp"

namespace xform {

/// One table cell. The numeric view is computed once from the raw text.
class CellValue {
 public:
  CellValue() = default;
  explicit CellValue(std::string raw) : raw_(std::move(raw)), numeric_(parse_numeric(raw_)) {}

  [[nodiscard]] const std::string& raw() const noexcept { return raw_; }
  [[nodiscard]] const std::optional<double>& numeric() const noexcept { return numeric_; }
  [[nodiscard]] bool is_numeric() const noexcept { return numeric_.has_value(); }

  friend bool operator==(const CellValue& a, const CellValue& b) noexcept { return a.raw_ == b.raw_; }

 private:
  std::string raw_;
  std::optional<double> numeric_;
};

struct ExamplePair {
  CellValue source;
  CellValue target;

  ExamplePair() = default;
  ExamplePair(CellValue s, CellValue t) : source(std::move(s)), target(std::move(t)) {}
  ExamplePair(std::string s, std::string t) : source(std::move(s)), target(std::move(t)) {}

  friend bool operator==(const ExamplePair&, const ExamplePair&) = default;
};

using Column = std::vector<CellValue>;

Column make_column(std::span<const std::string> raws);
std::vector<ExamplePair> make_pairs(std::span<const std::pair<std::string, std::string>> raws);

/// Guiding pairs plus the full source column and, optionally, the target column.
struct ExampleSet {
  std::vector<ExamplePair> examples;
  Column source_column;
  std::optional<Column> target_column;

  /// Throws EmptyExamples, or InvalidConfig when an example source is missing
  /// from a non-empty source column.
  void validate() const;
};

enum class TransformClass { String, Numbers, Algorithmic, General };

std::string_view to_string(TransformClass c) noexcept;
/// Accepts the canonical names case-insensitively.
std::optional<TransformClass> parse_transform_class(std::string_view name);

}  // namespace xform
