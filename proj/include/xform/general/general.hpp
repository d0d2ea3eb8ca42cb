#pragma once

#include <atomic>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xform/codegen/codegen.hpp"
#include "xform/llm/gateway.hpp"
#include "xform/llm/prompt_catalog.hpp"
#include "xform/table/cell.hpp"

namespace xform {

struct GeneralOptions {
  /// Maximum lookup calls; 0 means one per distinct value.
  std::size_t budget = 0;
  std::size_t concurrency = 8;
  bool guardrail = false;
  double max_aned = 0.5;
  std::size_t max_serialized_chars = 4000;
  std::uint64_t seed = 0;
};

/// Source-to-target table built one value at a time. Safe for concurrent use.
class LookupPlan {
 public:
  LookupPlan(RelationshipTag tag, std::vector<ExamplePair> examples, std::size_t budget);

  [[nodiscard]] const RelationshipTag& tag() const noexcept { return tag_; }
  [[nodiscard]] const std::vector<ExamplePair>& examples() const noexcept { return examples_; }
  [[nodiscard]] std::size_t budget() const noexcept { return budget_; }
  [[nodiscard]] std::size_t calls_used() const noexcept { return used_.load(); }

  /// Outer optional: whether the value is cached; inner: the resolved text
  /// (absent when the model did not know it).
  [[nodiscard]] std::optional<std::optional<std::string>> cached(const std::string& source) const;
  void store(const std::string& source, std::optional<std::string> target);
  /// Takes one unit of budget; false when none is left.
  bool reserve_call();

  /// Resolved entries sorted by source text.
  [[nodiscard]] std::vector<std::pair<std::string, std::string>> table() const;

 private:
  RelationshipTag tag_;
  std::vector<ExamplePair> examples_;
  std::size_t budget_;
  std::atomic<std::size_t> used_{0};
  mutable std::mutex mutex_;
  std::map<std::string, std::optional<std::string>> cache_;
};

/// Column-type tag with the type-detection demonstrations. Throws UnparsableTag.
RelationshipTag detect_column_types(std::span<const ExamplePair> examples, Gateway& gateway,
                                    const PromptCatalog& catalog = PromptCatalog::builtin(),
                                    const GeneralOptions& options = {});

PromptRequest build_lookup_prompt(const std::string& source, const LookupPlan& plan,
                                  const PromptCatalog& catalog = PromptCatalog::builtin(),
                                  const GeneralOptions& options = {});

/// Completion text reduced to a value: first non-empty line, label and quotes
/// stripped. "unknown", "n/a" and empty answers are absent.
std::optional<std::string> clean_lookup_answer(std::string_view completion);

/// Cache first, then one gateway call. Throws BudgetExhausted; gateway errors propagate.
std::optional<CellValue> lookup_value(const CellValue& source, LookupPlan& plan, Gateway& gateway,
                                      const PromptCatalog& catalog = PromptCatalog::builtin(),
                                      const GeneralOptions& options = {});

/// Drops values whose normalized edit distance to every target exceeds `max_aned`.
std::vector<std::optional<CellValue>> guardrail_verify(std::span<const std::optional<CellValue>> resolved,
                                                       std::span<const CellValue> targets, double max_aned,
                                                       std::vector<std::size_t>* dropped = nullptr);

struct GeneralOutcome {
  RelationshipTag tag;
  std::vector<std::optional<CellValue>> predictions;
  std::vector<std::pair<std::string, std::string>> lookup_table;
  std::vector<std::size_t> guardrail_dropped;
  std::vector<std::string> warnings;
  std::size_t lookup_calls = 0;
};

/// Type detection, then one lookup per distinct uncached value with bounded
/// concurrency. Row failures become absent predictions; only InvalidConfig
/// and AuthMissing abort.
GeneralOutcome transform_general(const ExampleSet& set, Gateway& gateway,
                                 const PromptCatalog& catalog = PromptCatalog::builtin(),
                                 const GeneralOptions& options = {});

}  // namespace xform
