#include "xform/pipeline/pipeline.hpp"

#include "xform/general/general.hpp"

namespace xform {

std::vector<std::optional<CellValue>> apply_program(const TransformProgram& program, const Column& column,
                                                    const lang::EvalLimits& limits,
                                                    std::vector<std::pair<std::size_t, std::string>>* row_errors) {
  std::vector<std::optional<CellValue>> out(column.size());
  for (std::size_t i = 0; i < column.size(); ++i) {
    try {
      out[i] = evaluate(program, column[i], limits);
    } catch (const Error& e) {
      if (row_errors != nullptr) row_errors->emplace_back(i, e.what());
    }
  }
  return out;
}

TableRun transform_table(const ExampleSet& set, const RunConfig& config, Gateway& gateway,
                         const PromptCatalog& catalog) {
  set.validate();
  TableRun run;
  TableArtifact& art = run.artifact;
  art.decision = classify(set, gateway, config.class_override, catalog, {4000, config.seed});

  switch (art.decision.cls) {
    case TransformClass::Numbers: {
      fit::NumericFitOutcome f = fit::fit_examples(set.examples);
      art.fit = f.best;
      art.fit_attempts = std::move(f.attempts);
      art.decimals = f.decimals;
      art.warnings = std::move(f.warnings);
      art.program_text = f.program.source_text;
      art.example_total = set.examples.size();
      art.example_pass_count = count_passing(f.program, set.examples, config.limits);
      run.predictions = apply_program(f.program, set.source_column, config.limits, &art.row_errors);
      break;
    }
    case TransformClass::String:
    case TransformClass::Algorithmic: {
      SynthesisOutcome s;
      if (art.decision.cls == TransformClass::String) {
        s = generate_string_transform(set.examples, gateway, catalog, config.codegen_options());
      } else {
        art.tag = tag_relationship(set.examples, gateway, catalog, config.codegen_options());
        s = generate_algorithmic_transform(set.examples, *art.tag, gateway, catalog, config.codegen_options());
      }
      art.program_text = s.program.source_text;
      art.synthesis_attempts = s.attempts;
      art.example_pass_count = s.example_pass_count;
      art.example_total = s.example_total;
      for (const auto& r : s.rejected) art.warnings.push_back("rejected attempt: " + r);
      run.predictions = apply_program(s.program, set.source_column, config.limits, &art.row_errors);
      break;
    }
    case TransformClass::General: {
      GeneralOutcome g = transform_general(set, gateway, catalog, config.general_options());
      art.tag = g.tag;
      art.lookup_table = std::move(g.lookup_table);
      art.guardrail_dropped = std::move(g.guardrail_dropped);
      art.warnings = std::move(g.warnings);
      run.predictions = std::move(g.predictions);
      break;
    }
  }
  return run;
}

}  // namespace xform
