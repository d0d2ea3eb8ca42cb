#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xform/lang/program.hpp"
#include "xform/llm/gateway.hpp"
#include "xform/llm/prompt_catalog.hpp"
#include "xform/table/cell.hpp"

namespace xform {

struct RelationshipTag {
  std::string source_type;
  std::string target_type;

  [[nodiscard]] std::string rendered() const { return source_type + " to " + target_type; }
  friend bool operator==(const RelationshipTag&, const RelationshipTag&) = default;
};

/// Splits the first line containing " to " at its last occurrence. Leading
/// "Relationship:" labels, quotes and brackets are stripped.
std::optional<RelationshipTag> parse_relationship_tag(std::string_view completion);

struct CodegenOptions {
  int max_attempts = 3;
  /// Require every example to pass; failures are fed back like diagnostics.
  bool strict = false;
  lang::EvalLimits limits;
  std::size_t max_serialized_chars = 4000;
  std::uint64_t seed = 0;
};

struct SynthesisOutcome {
  TransformProgram program;
  int attempts = 0;
  std::size_t example_pass_count = 0;
  std::size_t example_total = 0;
  std::vector<std::string> rejected;  // diagnostics of discarded attempts
};

/// First fenced block's body, else the whole text trimmed.
std::string extract_code(std::string_view completion);

/// One line per builtin signature, for prompts and docs.
std::string builtin_reference();

std::size_t count_passing(const TransformProgram& program, std::span<const ExamplePair> examples,
                          const lang::EvalLimits& limits);

PromptRequest build_string_prompt(std::span<const ExamplePair> examples,
                                  const PromptCatalog& catalog = PromptCatalog::builtin());
PromptRequest build_algorithmic_prompt(std::span<const ExamplePair> examples, const RelationshipTag& tag,
                                       const PromptCatalog& catalog = PromptCatalog::builtin());

/// Throws SynthesisFailed after `max_attempts` unusable programs.
SynthesisOutcome generate_string_transform(std::span<const ExamplePair> examples, Gateway& gateway,
                                           const PromptCatalog& catalog = PromptCatalog::builtin(),
                                           const CodegenOptions& options = {});

SynthesisOutcome generate_algorithmic_transform(std::span<const ExamplePair> examples, const RelationshipTag& tag,
                                                Gateway& gateway,
                                                const PromptCatalog& catalog = PromptCatalog::builtin(),
                                                const CodegenOptions& options = {});

/// Asks for a "[source] to [target]" tag with the named catalog template,
/// re-asking once. Throws UnparsableTag.
RelationshipTag request_tag(std::span<const ExamplePair> examples, Gateway& gateway, std::string_view user_template,
                            Purpose purpose, const PromptCatalog& catalog = PromptCatalog::builtin(),
                            const CodegenOptions& options = {});

RelationshipTag tag_relationship(std::span<const ExamplePair> examples, Gateway& gateway,
                                 const PromptCatalog& catalog = PromptCatalog::builtin(),
                                 const CodegenOptions& options = {});

}  // namespace xform
