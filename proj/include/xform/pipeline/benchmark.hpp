#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xform/join/join.hpp"
#include "xform/pipeline/pipeline.hpp"

namespace xform {

/// One benchmark table directory: source.csv, target.csv, optional gold.csv
/// (source,target pairs) and optional class.txt (expected class name).
struct TableData {
  std::string name;
  Column source;
  Column target;
  std::vector<ExamplePair> gold_pairs;
  bool explicit_gold = false;
  std::optional<TransformClass> expected_class;
};

/// Throws IoError, MalformedCsv, WrongArity or ArityMismatch.
TableData load_table_dir(const std::filesystem::path& dir);

/// The first `n` gold pairs after a seeded shuffle.
std::vector<ExamplePair> draw_examples(std::span<const ExamplePair> gold, std::size_t n, std::uint64_t seed);

struct TableResult {
  std::string name;
  bool ok = false;
  std::string error;
  std::optional<TransformClass> cls;  // decided class when classification finished
  std::optional<TransformClass> expected_class;
  std::vector<ExamplePair> examples;
  MatchOptions match;
  JoinReport report;
  TableArtifact artifact;
  std::array<std::size_t, kPurposeCount> calls{};
};

struct ClassSummary {
  TransformClass cls;
  std::size_t tables = 0;
  double precision = 0, recall = 0, f1 = 0, aed = 0, aned = 0;
};

struct BenchmarkSummary {
  std::vector<TableResult> tables;
  double precision = 0, recall = 0, f1 = 0, aed = 0, aned = 0;
  std::size_t failed = 0;
  std::vector<ClassSummary> per_class;
  std::uint64_t seed = 0;
  std::size_t n_examples = 0;
};

/// Runs one table end to end; never throws for table-level failures.
TableResult run_table(const TableData& table, const RunConfig& config, std::shared_ptr<Transport> transport,
                      const PromptCatalog& catalog);

/// Every subdirectory of `dataset_dir`, in name order, processed up to
/// `table_workers` at a time. Throws IoError when the directory is unreadable.
BenchmarkSummary run_benchmark(const std::filesystem::path& dataset_dir, const RunConfig& config,
                               std::shared_ptr<Transport> transport = nullptr,
                               const PromptCatalog& catalog = PromptCatalog::builtin());

/// Macro averages over `tables`; failed tables count as zero.
void summarize(BenchmarkSummary& summary);

}  // namespace xform
