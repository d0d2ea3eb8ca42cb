#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "xform/llm/gateway.hpp"
#include "xform/llm/prompt_catalog.hpp"
#include "xform/table/cell.hpp"

namespace xform {

enum class DecisionSource { LlmLabel, NumericPrecheck, UserOverride };

std::string_view to_string(DecisionSource s) noexcept;

struct ClassDecision {
  TransformClass cls = TransformClass::String;
  DecisionSource source = DecisionSource::LlmLabel;
  std::string raw_label;
};

struct ClassifierOptions {
  std::size_t max_serialized_chars = 4000;
  std::uint64_t seed = 0;
};

/// Numbers when every value on both sides is numeric and none looks like a
/// zero-padded code; nothing otherwise.
std::optional<TransformClass> numeric_precheck(std::span<const ExamplePair> examples);

/// True for text like "007" or "-0123" (a zero followed by another digit).
bool is_zero_padded(std::string_view raw) noexcept;

PromptRequest build_classifier_prompt(std::span<const ExamplePair> examples,
                                      const PromptCatalog& catalog = PromptCatalog::builtin(),
                                      const ClassifierOptions& options = {});

/// Earliest class keyword in `completion`, case-insensitive.
std::optional<TransformClass> parse_class_label(std::string_view completion);

/// Override, else precheck, else the model (with one re-ask). Throws UnparsableLabel.
ClassDecision classify(const ExampleSet& set, Gateway& gateway, std::optional<TransformClass> override_class = {},
                       const PromptCatalog& catalog = PromptCatalog::builtin(), const ClassifierOptions& options = {});

}  // namespace xform
