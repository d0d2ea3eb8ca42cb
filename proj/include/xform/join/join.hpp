#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "xform/join/edit_distance.hpp"
#include "xform/table/cell.hpp"

namespace xform {

enum class MatchMode { Exact, EditDistance, NumericDistance };

std::string_view to_string(MatchMode m) noexcept;
std::optional<MatchMode> parse_match_mode(std::string_view name);

struct MatchOptions {
  MatchMode mode = MatchMode::EditDistance;
  /// Matches farther than this are dropped.
  std::optional<double> max_distance;
  /// Accepted for symmetry with max_distance; it has no effect.
  std::optional<double> min_distance;
};

struct Match {
  std::size_t index = 0;
  double distance = 0;
};

/// Closest target under `options.mode`, ties to the smallest index. Throws
/// NonNumericPrediction in NumericDistance mode when the prediction is not a number.
std::optional<Match> match_one(const CellValue& prediction, std::span<const CellValue> targets,
                               const MatchOptions& options);

struct RowOutcome {
  CellValue source;
  std::optional<CellValue> prediction;
  std::optional<CellValue> matched_target;
  std::optional<std::size_t> matched_index;
  std::optional<double> distance;
  std::optional<std::string> gold;
  bool correct = false;
  std::string note;  // why a row has no prediction or match
};

struct JoinReport {
  std::vector<RowOutcome> rows;
  double precision = 0;
  double recall = 0;
  double f1 = 0;
  double aed = 0;
  double aned = 0;
  std::size_t predicted = 0;
  std::size_t matched = 0;
  std::size_t correct = 0;
  TransformClass cls = TransformClass::String;
  std::optional<std::string> program_text;
};

/// Gold target per source row; absent when the row has no gold counterpart.
using GoldAlignment = std::vector<std::optional<std::string>>;

/// Row i of the source corresponds to row i of the target.
GoldAlignment positional_gold(const ExampleSet& set);
/// Gold from explicit (source, target) pairs, looked up by source text.
GoldAlignment gold_from_pairs(const Column& source_column, std::span<const ExamplePair> pairs);

/// Per-row matching plus metrics. Throws ArityMismatch when the prediction or
/// gold count differs from the source column, or no target column is set;
/// InvalidConfig for NumericDistance outside the Numbers class.
JoinReport join(const ExampleSet& set, std::span<const std::optional<CellValue>> predictions,
                const MatchOptions& options, const GoldAlignment& gold, TransformClass cls);

/// Metrics from counts: precision = correct/matched, recall = correct/total,
/// F1 = 2·correct/(matched + total).
void fill_metrics(JoinReport& report);

}  // namespace xform
