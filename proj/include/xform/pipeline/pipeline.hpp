#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xform/classify/classifier.hpp"
#include "xform/codegen/codegen.hpp"
#include "xform/fit/fitter.hpp"
#include "xform/pipeline/config.hpp"

namespace xform {

/// What a table run produced besides predictions: the interpretable part.
struct TableArtifact {
  ClassDecision decision;
  std::optional<std::string> program_text;
  std::optional<fit::FitResult> fit;
  std::vector<fit::FamilyAttempt> fit_attempts;
  int decimals = 0;
  std::optional<RelationshipTag> tag;
  int synthesis_attempts = 0;
  std::size_t example_pass_count = 0;
  std::size_t example_total = 0;
  std::vector<std::pair<std::string, std::string>> lookup_table;
  std::vector<std::size_t> guardrail_dropped;
  std::vector<std::string> warnings;
  std::vector<std::pair<std::size_t, std::string>> row_errors;
};

struct TableRun {
  std::vector<std::optional<CellValue>> predictions;
  TableArtifact artifact;
};

/// Evaluates `program` on every cell; faults become absent predictions and row errors.
std::vector<std::optional<CellValue>> apply_program(const TransformProgram& program, const Column& column,
                                                    const lang::EvalLimits& limits,
                                                    std::vector<std::pair<std::size_t, std::string>>* row_errors);

/// Classify, synthesize by class, and predict every source row. Synthesis
/// failures (SynthesisFailed, AllFitsFailed, ...) propagate.
TableRun transform_table(const ExampleSet& set, const RunConfig& config, Gateway& gateway,
                         const PromptCatalog& catalog = PromptCatalog::builtin());

}  // namespace xform
