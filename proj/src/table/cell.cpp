#include "xform/table/cell.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

#include "xform/error.hpp"

namespace xform {

Column make_column(std::span<const std::string> raws) {
  Column out;
  out.reserve(raws.size());
  for (const auto& r : raws) out.emplace_back(r);
  return out;
}

std::vector<ExamplePair> make_pairs(std::span<const std::pair<std::string, std::string>> raws) {
  std::vector<ExamplePair> out;
  out.reserve(raws.size());
  for (const auto& [s, t] : raws) out.emplace_back(s, t);
  return out;
}

void ExampleSet::validate() const {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "example set has no pairs");
  if (source_column.empty()) return;
  std::unordered_set<std::string> present;
  for (const auto& c : source_column) present.insert(c.raw());
  for (const auto& e : examples) {
    if (!present.contains(e.source.raw())) {
      throw Error(ErrorCode::InvalidConfig, "example source \"" + e.source.raw() + "\" is not in the source column");
    }
  }
}

std::string_view to_string(TransformClass c) noexcept {
  switch (c) {
    case TransformClass::String: return "String";
    case TransformClass::Numbers: return "Numbers";
    case TransformClass::Algorithmic: return "Algorithmic";
    case TransformClass::General: return "General";
  }
  return "General";
}

std::optional<TransformClass> parse_transform_class(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "string") return TransformClass::String;
  if (lower == "numbers" || lower == "numerical" || lower == "numeric") return TransformClass::Numbers;
  if (lower == "algorithmic") return TransformClass::Algorithmic;
  if (lower == "general") return TransformClass::General;
  return std::nullopt;
}

}  // namespace xform
