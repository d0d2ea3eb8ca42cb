#include "xform/pipeline/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "xform/error.hpp"
#include "xform/table/csv.hpp"
#include "xform/table/numeric_text.hpp"
#include "xform/table/sampling.hpp"

namespace fs = std::filesystem;

namespace xform {

TableData load_table_dir(const fs::path& dir) {
  TableData t;
  t.name = dir.filename().string();
  t.source = load_column_file(dir / "source.csv");
  t.target = load_column_file(dir / "target.csv");
  if (fs::exists(dir / "gold.csv")) {
    t.gold_pairs = load_example_file(dir / "gold.csv");
    t.explicit_gold = true;
  } else {
    if (t.source.size() != t.target.size()) {
      throw Error(ErrorCode::ArityMismatch, t.name + ": source has " + std::to_string(t.source.size()) +
                                                " rows but target has " + std::to_string(t.target.size()));
    }
    for (std::size_t i = 0; i < t.source.size(); ++i) t.gold_pairs.emplace_back(t.source[i], t.target[i]);
  }
  if (fs::exists(dir / "class.txt")) {
    const std::string label(trim(read_text_file(dir / "class.txt")));
    t.expected_class = parse_transform_class(label);
    if (!t.expected_class) throw Error(ErrorCode::InvalidConfig, t.name + ": unknown class \"" + label + "\"");
  }
  return t;
}

std::vector<ExamplePair> draw_examples(std::span<const ExamplePair> gold, std::size_t n, std::uint64_t seed) {
  const auto order = seeded_permutation(gold.size(), seed);
  std::vector<ExamplePair> out;
  for (std::size_t i = 0; i < order.size() && out.size() < n; ++i) out.push_back(gold[order[i]]);
  return out;
}

TableResult run_table(const TableData& table, const RunConfig& config, std::shared_ptr<Transport> transport,
                      const PromptCatalog& catalog) {
  TableResult r;
  r.name = table.name;
  r.expected_class = table.expected_class;
  r.report.program_text.reset();
  try {
    ExampleSet set;
    set.source_column = table.source;
    set.target_column = table.target;
    set.examples = draw_examples(table.gold_pairs, config.n_examples, config.seed);
    r.examples = set.examples;
    if (set.examples.empty()) throw Error(ErrorCode::EmptyExamples, "table has no gold pairs to draw examples from");

    Gateway gateway(config.backend, transport);
    try {
      TableRun run = transform_table(set, config, gateway, catalog);
      r.cls = run.artifact.decision.cls;
      r.artifact = std::move(run.artifact);
      r.match = config.match_for(*r.cls);
      const GoldAlignment gold =
          table.explicit_gold ? gold_from_pairs(set.source_column, table.gold_pairs) : positional_gold(set);
      r.report = join(set, run.predictions, r.match, gold, *r.cls);
      r.report.program_text = r.artifact.program_text;
      r.ok = true;
    } catch (...) {
      for (std::size_t p = 0; p < kPurposeCount; ++p) r.calls[p] = gateway.calls_for(static_cast<Purpose>(p));
      throw;
    }
    for (std::size_t p = 0; p < kPurposeCount; ++p) r.calls[p] = gateway.calls_for(static_cast<Purpose>(p));
  } catch (const Error& e) {
    r.ok = false;
    r.error = e.what();
    r.report = JoinReport{};
    if (r.cls) r.report.cls = *r.cls;
  }
  return r;
}

void summarize(BenchmarkSummary& s) {
  s.precision = s.recall = s.f1 = s.aed = s.aned = 0;
  s.failed = 0;
  s.per_class.clear();
  for (const auto& t : s.tables) {
    s.precision += t.report.precision;
    s.recall += t.report.recall;
    s.f1 += t.report.f1;
    s.aed += t.report.aed;
    s.aned += t.report.aned;
    if (!t.ok) ++s.failed;
  }
  if (!s.tables.empty()) {
    const auto n = static_cast<double>(s.tables.size());
    s.precision /= n;
    s.recall /= n;
    s.f1 /= n;
    s.aed /= n;
    s.aned /= n;
  }
  for (TransformClass cls : {TransformClass::String, TransformClass::Numbers, TransformClass::Algorithmic,
                             TransformClass::General}) {
    ClassSummary c{cls};
    for (const auto& t : s.tables) {
      const auto group = t.cls ? t.cls : t.expected_class;
      if (group != cls) continue;
      ++c.tables;
      c.precision += t.report.precision;
      c.recall += t.report.recall;
      c.f1 += t.report.f1;
      c.aed += t.report.aed;
      c.aned += t.report.aned;
    }
    if (c.tables == 0) continue;
    const auto n = static_cast<double>(c.tables);
    c.precision /= n;
    c.recall /= n;
    c.f1 /= n;
    c.aed /= n;
    c.aned /= n;
    s.per_class.push_back(c);
  }
}

BenchmarkSummary run_benchmark(const fs::path& dataset_dir, const RunConfig& config,
                               std::shared_ptr<Transport> transport, const PromptCatalog& catalog) {
  std::error_code ec;
  if (!fs::is_directory(dataset_dir, ec)) {
    throw Error(ErrorCode::IoError, "cannot read dataset directory " + dataset_dir.string());
  }
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(dataset_dir, ec)) {
    if (entry.is_directory() && fs::exists(entry.path() / "source.csv")) dirs.push_back(entry.path());
  }
  if (ec) throw Error(ErrorCode::IoError, "cannot list " + dataset_dir.string() + ": " + ec.message());
  std::sort(dirs.begin(), dirs.end());

  BenchmarkSummary summary;
  summary.seed = config.seed;
  summary.n_examples = config.n_examples;
  summary.tables.resize(dirs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= dirs.size()) return;
      try {
        summary.tables[k] = run_table(load_table_dir(dirs[k]), config, transport, catalog);
      } catch (const Error& e) {
        summary.tables[k].name = dirs[k].filename().string();
        summary.tables[k].ok = false;
        summary.tables[k].error = e.what();
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(config.table_workers, dirs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  summarize(summary);
  return summary;
}

}  // namespace xform
