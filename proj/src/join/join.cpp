#include "xform/join/join.hpp"

#include <cmath>
#include <map>

#include "xform/error.hpp"
#include "xform/table/utf8.hpp"

namespace xform {

std::string_view to_string(MatchMode m) noexcept {
  switch (m) {
    case MatchMode::Exact: return "exact";
    case MatchMode::EditDistance: return "edit";
    case MatchMode::NumericDistance: return "numeric";
  }
  return "edit";
}

std::optional<MatchMode> parse_match_mode(std::string_view name) {
  if (name == "exact") return MatchMode::Exact;
  if (name == "edit") return MatchMode::EditDistance;
  if (name == "numeric") return MatchMode::NumericDistance;
  return std::nullopt;
}

std::optional<Match> match_one(const CellValue& prediction, std::span<const CellValue> targets,
                               const MatchOptions& options) {
  std::optional<Match> best;
  switch (options.mode) {
    case MatchMode::Exact:
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i].raw() == prediction.raw()) return Match{i, 0};
      }
      return std::nullopt;
    case MatchMode::EditDistance: {
      const auto p = utf8::decode(prediction.raw());
      for (std::size_t i = 0; i < targets.size(); ++i) {
        const auto d = static_cast<double>(edit_distance(std::u32string_view(p), utf8::decode(targets[i].raw())));
        if (!best || d < best->distance) best = Match{i, d};
        if (d == 0) break;
      }
      break;
    }
    case MatchMode::NumericDistance: {
      if (!prediction.is_numeric()) {
        throw Error(ErrorCode::NonNumericPrediction, "prediction \"" + prediction.raw() + "\" is not a number");
      }
      const double p = *prediction.numeric();
      for (std::size_t i = 0; i < targets.size(); ++i) {
        if (!targets[i].is_numeric()) continue;
        const double d = std::fabs(p - *targets[i].numeric());
        if (!best || d < best->distance) best = Match{i, d};
      }
      break;
    }
  }
  if (best && options.max_distance && best->distance > *options.max_distance) return std::nullopt;
  return best;
}

GoldAlignment positional_gold(const ExampleSet& set) {
  GoldAlignment gold(set.source_column.size());
  if (!set.target_column) return gold;
  for (std::size_t i = 0; i < gold.size() && i < set.target_column->size(); ++i) gold[i] = (*set.target_column)[i].raw();
  return gold;
}

GoldAlignment gold_from_pairs(const Column& source_column, std::span<const ExamplePair> pairs) {
  std::map<std::string, std::string, std::less<>> by_source;
  for (const auto& p : pairs) by_source.emplace(p.source.raw(), p.target.raw());
  GoldAlignment gold(source_column.size());
  for (std::size_t i = 0; i < source_column.size(); ++i) {
    if (auto it = by_source.find(source_column[i].raw()); it != by_source.end()) gold[i] = it->second;
  }
  return gold;
}

void fill_metrics(JoinReport& r) {
  const std::size_t total = r.rows.size();
  r.precision = r.matched == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(r.matched);
  r.recall = total == 0 ? 0.0 : static_cast<double>(r.correct) / static_cast<double>(total);
  r.f1 = r.correct == 0 ? 0.0 : 2.0 * static_cast<double>(r.correct) / static_cast<double>(r.matched + total);
}

JoinReport join(const ExampleSet& set, std::span<const std::optional<CellValue>> predictions,
                const MatchOptions& options, const GoldAlignment& gold, TransformClass cls) {
  if (!set.target_column) throw Error(ErrorCode::ArityMismatch, "join needs a target column");
  if (predictions.size() != set.source_column.size()) {
    throw Error(ErrorCode::ArityMismatch, std::to_string(predictions.size()) + " predictions for " +
                                              std::to_string(set.source_column.size()) + " source rows");
  }
  if (gold.size() != set.source_column.size()) {
    throw Error(ErrorCode::ArityMismatch, "gold alignment covers " + std::to_string(gold.size()) + " of " +
                                              std::to_string(set.source_column.size()) + " rows");
  }
  if (options.mode == MatchMode::NumericDistance && cls != TransformClass::Numbers) {
    throw Error(ErrorCode::InvalidConfig, "numeric matching applies only to the Numbers class");
  }

  JoinReport report;
  report.cls = cls;
  const Column& targets = *set.target_column;
  double aed_sum = 0;
  double aned_sum = 0;
  std::size_t scored = 0;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    RowOutcome row;
    row.source = set.source_column[i];
    row.prediction = predictions[i];
    row.gold = gold[i];
    if (!row.prediction) {
      row.note = "no prediction";
    } else {
      ++report.predicted;
      if (row.gold) {
        const auto g = utf8::decode(*row.gold);
        const auto d = static_cast<double>(edit_distance(utf8::decode(row.prediction->raw()), g));
        aed_sum += d;
        aned_sum += d / static_cast<double>(std::max<std::size_t>(1, g.size()));
        ++scored;
      }
      try {
        if (auto m = match_one(*row.prediction, targets, options)) {
          row.matched_index = m->index;
          row.matched_target = targets[m->index];
          row.distance = m->distance;
          ++report.matched;
          row.correct = row.gold && *row.gold == targets[m->index].raw();
          if (row.correct) ++report.correct;
        } else {
          row.note = "no target within bounds";
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NonNumericPrediction) throw;
        row.note = e.what();
      }
    }
    report.rows.push_back(std::move(row));
  }
  report.aed = scored == 0 ? 0.0 : aed_sum / static_cast<double>(scored);
  report.aned = scored == 0 ? 0.0 : aned_sum / static_cast<double>(scored);
  fill_metrics(report);
  return report;
}

}  // namespace xform
