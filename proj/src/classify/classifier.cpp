#include "xform/classify/classifier.hpp"

#include <algorithm>
#include <array>

#include "xform/error.hpp"
#include "xform/table/numeric_text.hpp"
#include "xform/table/serialize.hpp"

namespace xform {

std::string_view to_string(DecisionSource s) noexcept {
  switch (s) {
    case DecisionSource::LlmLabel: return "llm";
    case DecisionSource::NumericPrecheck: return "numeric-precheck";
    case DecisionSource::UserOverride: return "override";
  }
  return "llm";
}

bool is_zero_padded(std::string_view raw) noexcept {
  std::string_view v = trim(raw);
  if (!v.empty() && (v[0] == '+' || v[0] == '-')) v.remove_prefix(1);
  return v.size() > 1 && v[0] == '0' && v[1] >= '0' && v[1] <= '9';
}

std::optional<TransformClass> numeric_precheck(std::span<const ExamplePair> examples) {
  if (examples.empty()) return std::nullopt;
  for (const auto& p : examples) {
    if (!p.source.is_numeric() || !p.target.is_numeric()) return std::nullopt;
    if (is_zero_padded(p.source.raw()) || is_zero_padded(p.target.raw())) return std::nullopt;
  }
  return TransformClass::Numbers;
}

PromptRequest build_classifier_prompt(std::span<const ExamplePair> examples, const PromptCatalog& catalog,
                                      const ClassifierOptions& options) {
  if (examples.empty()) throw Error(ErrorCode::EmptyExamples, "classifier needs at least one example");
  PromptRequest req;
  req.purpose = Purpose::Classify;
  req.system_text = catalog.get("classify.system");
  req.user_text = catalog.render(
      "classify.user", {{"examples", serialize_examples(examples, options.max_serialized_chars, options.seed)}});
  req.max_output_chars = 200;
  return req;
}

std::optional<TransformClass> parse_class_label(std::string_view completion) {
  std::string lower(completion);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); });
  static constexpr std::array<std::pair<std::string_view, TransformClass>, 5> kKeywords = {{
      {"string", TransformClass::String},
      {"numbers", TransformClass::Numbers},
      {"numerical", TransformClass::Numbers},
      {"algorithmic", TransformClass::Algorithmic},
      {"general", TransformClass::General},
  }};
  std::optional<TransformClass> best;
  std::size_t best_pos = std::string::npos;
  for (const auto& [word, cls] : kKeywords) {
    const auto pos = lower.find(word);
    if (pos < best_pos) {
      best_pos = pos;
      best = cls;
    }
  }
  return best;
}

ClassDecision classify(const ExampleSet& set, Gateway& gateway, std::optional<TransformClass> override_class,
                       const PromptCatalog& catalog, const ClassifierOptions& options) {
  if (set.examples.empty()) throw Error(ErrorCode::EmptyExamples, "classifier needs at least one example");
  if (override_class) return {*override_class, DecisionSource::UserOverride, std::string(to_string(*override_class))};
  if (auto pre = numeric_precheck(set.examples)) return {*pre, DecisionSource::NumericPrecheck, "Numbers"};

  PromptRequest req = build_classifier_prompt(set.examples, catalog, options);
  Completion first = gateway.complete(req);
  if (auto cls = parse_class_label(first.text)) return {*cls, DecisionSource::LlmLabel, first.text};

  req.user_text = catalog.render(
      "classify.reask", {{"examples", serialize_examples(set.examples, options.max_serialized_chars, options.seed)}});
  Completion second = gateway.complete(req);
  if (auto cls = parse_class_label(second.text)) return {*cls, DecisionSource::LlmLabel, second.text};
  throw Error(ErrorCode::UnparsableLabel, "no class label in completions: \"" + first.text + "\" / \"" + second.text + "\"");
}

}  // namespace xform
