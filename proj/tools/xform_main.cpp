// Command-line front end: classify, fit, synth, transform, join, bench.
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "xform/classify/classifier.hpp"
#include "xform/codegen/codegen.hpp"
#include "xform/fit/fitter.hpp"
#include "xform/join/join.hpp"
#include "xform/pipeline/benchmark.hpp"
#include "xform/pipeline/config.hpp"
#include "xform/pipeline/pipeline.hpp"
#include "xform/pipeline/report.hpp"
#include "xform/table/csv.hpp"

namespace fs = std::filesystem;
using namespace xform;

namespace {

enum Exit { kOk = 0, kFailed = 1, kPartial = 2, kConfig = 3, kEmpty = 4 };

struct Inputs {
  std::string examples;
  std::string source;
  std::string target;
  std::string gold;
  std::string dataset;
  std::string config_file;
  std::string format = "text";
  bool header = false;
  std::vector<std::pair<std::string, std::string>> overrides;
};

RunConfig build_config(const Inputs& in) {
  RunConfig cfg;
  if (!in.config_file.empty()) apply_config_file(cfg, in.config_file);
  for (const auto& [k, v] : in.overrides) apply_config_entry(cfg, k, v);
  cfg.validate();
  return cfg;
}

PromptCatalog catalog_for(const RunConfig& cfg) {
  return cfg.prompts_file ? PromptCatalog::load(*cfg.prompts_file) : PromptCatalog::builtin();
}

void require(const std::string& value, const char* flag) {
  if (value.empty()) throw Error(ErrorCode::InvalidConfig, std::string(flag) + " is required");
}

ExampleSet example_set(const Inputs& in, bool need_source) {
  require(in.examples, "--examples");
  ExampleSet set;
  set.examples = load_example_file(in.examples, in.header);
  if (need_source) {
    require(in.source, "--source");
    set.source_column = load_column_file(in.source, {0, in.header});
  } else {
    for (const auto& ex : set.examples) set.source_column.push_back(ex.source);
  }
  if (!in.target.empty()) set.target_column = load_column_file(in.target, {0, in.header});
  return set;
}

void emit(const Inputs& in, const RunConfig& cfg, const ordered_json& j, const std::string& text,
          const std::string& file) {
  if (in.format == "json") {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    write_text_file(cfg.output_dir / file, j.dump(2) + "\n");
  }
}

int cmd_classify(const Inputs& in) {
  const RunConfig cfg = build_config(in);
  const PromptCatalog cat = catalog_for(cfg);
  Gateway gw(cfg.backend);
  const ClassDecision d = classify(example_set(in, false), gw, cfg.class_override, cat, {4000, cfg.seed});
  const ordered_json j = {{"class", std::string(to_string(d.cls))},
                          {"source", std::string(to_string(d.source))},
                          {"label", d.raw_label}};
  emit(in, cfg, j, std::string(to_string(d.cls)) + " (" + std::string(to_string(d.source)) + ")\n", "classify.json");
  return kOk;
}

int cmd_fit(const Inputs& in) {
  const RunConfig cfg = build_config(in);
  const ExampleSet set = example_set(in, false);
  const fit::NumericFitOutcome f = fit::fit_examples(set.examples);
  ordered_json j = to_json(f.best);
  j["decimals"] = f.decimals;
  j["program"] = f.program.source_text;
  ordered_json attempts = ordered_json::array();
  std::string text;
  for (const auto& a : f.attempts) {
    if (const auto* r = std::get_if<fit::FitResult>(&a.outcome)) {
      attempts.push_back(to_json(*r));
      char line[200];
      std::snprintf(line, sizeof line, "%-12s mse %.6g  params %.12g %.12g %.12g\n",
                    std::string(fit::to_string(r->family)).c_str(), r->mse, r->params[0], r->params[1], r->params[2]);
      text += line;
    } else {
      const Error& e = std::get<Error>(a.outcome);
      attempts.push_back({{"family", std::string(fit::to_string(a.family))}, {"error", e.what()}});
      text += std::string(fit::to_string(a.family)) + "  failed: " + e.what() + "\n";
    }
  }
  j["attempts"] = attempts;
  for (const auto& w : f.warnings) std::cerr << "warning: " << w << "\n";
  text += "selected " + std::string(fit::to_string(f.best.family)) + "\n" + f.program.source_text;
  emit(in, cfg, j, text, "fit.json");
  return kOk;
}

int cmd_synth(const Inputs& in) {
  const RunConfig cfg = build_config(in);
  const PromptCatalog cat = catalog_for(cfg);
  const ExampleSet set = example_set(in, false);
  Gateway gw(cfg.backend);
  const ClassDecision d = classify(set, gw, cfg.class_override, cat, {4000, cfg.seed});
  ordered_json j = {{"class", std::string(to_string(d.cls))}};
  std::string program;
  switch (d.cls) {
    case TransformClass::Numbers: {
      const auto f = fit::fit_examples(set.examples);
      program = f.program.source_text;
      j["fit"] = to_json(f.best);
      break;
    }
    case TransformClass::String:
    case TransformClass::Algorithmic: {
      SynthesisOutcome s;
      if (d.cls == TransformClass::String) {
        s = generate_string_transform(set.examples, gw, cat, cfg.codegen_options());
      } else {
        const RelationshipTag tag = tag_relationship(set.examples, gw, cat, cfg.codegen_options());
        j["relationship"] = tag.rendered();
        s = generate_algorithmic_transform(set.examples, tag, gw, cat, cfg.codegen_options());
      }
      program = s.program.source_text;
      j["attempts"] = s.attempts;
      j["examples_passed"] = s.example_pass_count;
      j["examples_total"] = s.example_total;
      std::cerr << s.example_pass_count << "/" << s.example_total << " examples pass after " << s.attempts
                << " attempt(s)\n";
      break;
    }
    case TransformClass::General:
      throw Error(ErrorCode::SynthesisFailed, "General transformations are lookups, not programs; use transform");
  }
  j["program"] = program;
  emit(in, cfg, j, program.ends_with('\n') ? program : program + "\n", "synth.json");
  return kOk;
}

int cmd_transform(const Inputs& in) {
  const RunConfig cfg = build_config(in);
  const PromptCatalog cat = catalog_for(cfg);
  const ExampleSet set = example_set(in, true);
  Gateway gw(cfg.backend);
  const TableRun run = transform_table(set, cfg, gw, cat);
  std::vector<CsvRecord> rows;
  for (std::size_t i = 0; i < set.source_column.size(); ++i) {
    rows.push_back({set.source_column[i].raw(), run.predictions[i] ? run.predictions[i]->raw() : ""});
  }
  const std::string csv = write_csv(rows);
  for (const auto& [row, msg] : run.artifact.row_errors) std::cerr << "row " << row << ": " << msg << "\n";
  for (const auto& w : run.artifact.warnings) std::cerr << "warning: " << w << "\n";
  if (in.format == "json") {
    ordered_json j = to_json(run.artifact);
    ordered_json preds = ordered_json::array();
    for (const auto& p : run.predictions) preds.push_back(p ? ordered_json(p->raw()) : ordered_json(nullptr));
    j["predictions"] = preds;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << csv;
  }
  if (!cfg.output_dir.empty()) {
    fs::create_directories(cfg.output_dir);
    write_text_file(cfg.output_dir / "predictions.csv", csv);
    write_text_file(cfg.output_dir / "artifact.json", to_json(run.artifact).dump(2) + "\n");
    if (!run.artifact.lookup_table.empty()) {
      std::vector<CsvRecord> table;
      for (const auto& [source, target] : run.artifact.lookup_table) table.push_back({source, target});
      write_text_file(cfg.output_dir / "lookup_table.csv", write_csv(table));
    }
  }
  return kOk;
}

int cmd_join(const Inputs& in) {
  const RunConfig cfg = build_config(in);
  const PromptCatalog cat = catalog_for(cfg);
  require(in.target, "--target");
  const ExampleSet set = example_set(in, true);
  Gateway gw(cfg.backend);
  const TableRun run = transform_table(set, cfg, gw, cat);
  const GoldAlignment gold = in.gold.empty() ? positional_gold(set)
                                             : gold_from_pairs(set.source_column, load_example_file(in.gold, in.header));
  JoinReport report = join(set, run.predictions, cfg.match_for(run.artifact.decision.cls), gold, run.artifact.decision.cls);
  report.program_text = run.artifact.program_text;
  ordered_json j = to_json(report);
  j["artifact"] = to_json(run.artifact);
  emit(in, cfg, j, render_text(report), "join.json");
  return kOk;
}

int cmd_bench(const Inputs& in) {
  const RunConfig cfg = build_config(in);
  const PromptCatalog cat = catalog_for(cfg);
  require(in.dataset, "--dataset");
  const BenchmarkSummary s = run_benchmark(in.dataset, cfg, nullptr, cat);
  emit(in, cfg, to_json(s), render_text(s), "summary.json");
  if (s.tables.empty()) {
    std::cerr << "no tables found in " << in.dataset << "\n";
    return kEmpty;
  }
  return s.failed > 0 ? kPartial : kOk;
}

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::InvalidConfig:
    case ErrorCode::AuthMissing:
    case ErrorCode::IoError:
    case ErrorCode::MalformedCsv:
    case ErrorCode::WrongArity:
      return kConfig;
    default:
      return kFailed;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Example-driven column transformation and join"};
  app.require_subcommand(1);
  app.fallthrough();
  Inputs in;

  auto setting = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app.add_option_function<std::string>(flag, [&in, key](const std::string& v) { in.overrides.emplace_back(key, v); },
                                         help);
  };
  auto toggle = [&](const std::string& flag, const std::string& key, const std::string& help) {
    app.add_flag_function(flag, [&in, key](std::int64_t) { in.overrides.emplace_back(key, "true"); }, help);
  };
  app.add_option("--config", in.config_file, "key=value settings file; flags override it");
  setting("--backend", "backend", "http, replay or record");
  setting("--fixtures", "fixtures", "fixture directory for replay/record");
  setting("--model", "model", "model name for http/record");
  setting("--endpoint", "endpoint", "chat-completions URL");
  setting("--api-key-env", "api_key_env", "environment variable holding the API key");
  setting("--timeout", "timeout", "request timeout in seconds");
  setting("--max-calls", "max_calls", "cap on LLM calls per gateway (0 = none)");
  setting("--seed", "seed", "seed for example sampling");
  setting("--n-examples", "n_examples", "examples drawn per benchmark table");
  setting("--out", "out", "directory for reports");
  setting("--prompts", "prompts", "prompt catalog file replacing the built-in one");
  setting("--max-steps", "max_steps", "evaluation step budget per row");
  setting("--lookup-budget", "lookup_budget", "max lookups per General table (0 = one per value)");
  setting("--concurrency", "concurrency", "in-flight lookups");
  setting("--max-aned", "max_aned", "guardrail threshold");
  setting("--workers", "workers", "tables processed at once");
  toggle("--strict", "strict", "require generated programs to pass every example");
  toggle("--guardrail", "guardrail", "drop lookups far from every target value");
  app.add_option("--format", in.format, "text or json")->check(CLI::IsMember({"text", "json"}));
  app.add_flag("--header", in.header, "CSV inputs start with a header row");

  auto* classify_cmd = app.add_subcommand("classify", "Classify the transformation behind example pairs");
  auto* fit_cmd = app.add_subcommand("fit", "Fit numeric model families to example pairs");
  auto* synth_cmd = app.add_subcommand("synth", "Synthesize a transformation program");
  auto* transform_cmd = app.add_subcommand("transform", "Transform a source column");
  auto* join_cmd = app.add_subcommand("join", "Transform and join against a target column");
  auto* bench_cmd = app.add_subcommand("bench", "Run a benchmark directory");

  for (auto* sub : {classify_cmd, fit_cmd, synth_cmd, transform_cmd, join_cmd}) {
    sub->add_option("--examples", in.examples, "two-column CSV of example pairs")->required();
  }
  for (auto* sub : {classify_cmd, synth_cmd, transform_cmd, join_cmd}) {
    sub->add_option_function<std::string>(
        "--class", [&in](const std::string& v) { in.overrides.emplace_back("class", v); }, "skip classification");
  }
  for (auto* sub : {transform_cmd, join_cmd}) sub->add_option("--source", in.source, "source column CSV")->required();
  join_cmd->add_option("--target", in.target, "target column CSV")->required();
  join_cmd->add_option("--gold", in.gold, "gold (source,target) pairs; default is row order");
  for (auto* sub : {join_cmd, bench_cmd}) {
    sub->add_option_function<std::string>(
        "--match", [&in](const std::string& v) { in.overrides.emplace_back("match", v); },
        "exact, edit, numeric or auto");
    sub->add_option_function<std::string>(
        "--max-distance", [&in](const std::string& v) { in.overrides.emplace_back("max_distance", v); },
        "drop matches farther than this");
    sub->add_option_function<std::string>(
        "--min-distance", [&in](const std::string& v) { in.overrides.emplace_back("min_distance", v); },
        "accepted but has no effect");
  }
  bench_cmd->add_option("--dataset", in.dataset, "directory of table directories")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*classify_cmd) return cmd_classify(in);
    if (*fit_cmd) return cmd_fit(in);
    if (*synth_cmd) return cmd_synth(in);
    if (*transform_cmd) return cmd_transform(in);
    if (*join_cmd) return cmd_join(in);
    if (*bench_cmd) return cmd_bench(in);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
