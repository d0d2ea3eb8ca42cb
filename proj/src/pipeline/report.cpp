#include "xform/pipeline/report.hpp"

#include <cstdio>

namespace xform {

namespace {

ordered_json optional_text(const std::optional<std::string>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

ordered_json metrics(double p, double r, double f1, double aed, double aned) {
  return {{"precision", p}, {"recall", r}, {"f1", f1}, {"aed", aed}, {"aned", aned}};
}

std::string fixed(double v, int decimals = 3) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

}  // namespace

ordered_json to_json(const fit::FitResult& fit) {
  const int arity = fit::family_info(fit.family).arity;
  ordered_json params = ordered_json::array();
  for (int i = 0; i < arity; ++i) params.push_back(fit.params[static_cast<std::size_t>(i)]);
  return {{"family", std::string(fit::to_string(fit.family))},
          {"params", params},
          {"mse", fit.mse},
          {"iterations", fit.iterations},
          {"converged", fit.converged}};
}

ordered_json to_json(const JoinReport& r, bool include_rows) {
  ordered_json j = metrics(r.precision, r.recall, r.f1, r.aed, r.aned);
  j["rows"] = r.rows.size();
  j["predicted"] = r.predicted;
  j["matched"] = r.matched;
  j["correct"] = r.correct;
  j["one_to_one"] = false;
  if (include_rows) {
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
      rows.push_back({{"source", row.source.raw()},
                      {"prediction", row.prediction ? ordered_json(row.prediction->raw()) : ordered_json(nullptr)},
                      {"matched", row.matched_target ? ordered_json(row.matched_target->raw()) : ordered_json(nullptr)},
                      {"distance", row.distance ? ordered_json(*row.distance) : ordered_json(nullptr)},
                      {"gold", optional_text(row.gold)},
                      {"correct", row.correct},
                      {"note", row.note}});
    }
    j["row_outcomes"] = rows;
  }
  return j;
}

ordered_json to_json(const TableArtifact& a) {
  ordered_json j;
  j["class"] = std::string(to_string(a.decision.cls));
  j["class_source"] = std::string(to_string(a.decision.source));
  j["class_label"] = a.decision.raw_label;
  j["program"] = optional_text(a.program_text);
  if (a.fit) {
    j["fit"] = to_json(*a.fit);
    j["decimals"] = a.decimals;
    ordered_json attempts = ordered_json::array();
    for (const auto& at : a.fit_attempts) {
      if (const auto* f = std::get_if<fit::FitResult>(&at.outcome)) {
        attempts.push_back(to_json(*f));
      } else {
        attempts.push_back({{"family", std::string(fit::to_string(at.family))},
                            {"error", std::get<Error>(at.outcome).what()}});
      }
    }
    j["fit_attempts"] = attempts;
  }
  if (a.tag) j["relationship"] = a.tag->rendered();
  if (a.synthesis_attempts > 0) j["synthesis_attempts"] = a.synthesis_attempts;
  j["examples_passed"] = a.example_pass_count;
  j["examples_total"] = a.example_total;
  if (!a.lookup_table.empty()) {
    ordered_json table = ordered_json::array();
    for (const auto& [s, t] : a.lookup_table) table.push_back({s, t});
    j["lookup_table"] = table;
  }
  if (!a.guardrail_dropped.empty()) j["guardrail_dropped"] = a.guardrail_dropped;
  j["warnings"] = a.warnings;
  ordered_json errs = ordered_json::array();
  for (const auto& [row, msg] : a.row_errors) errs.push_back({{"row", row}, {"error", msg}});
  j["row_errors"] = errs;
  return j;
}

ordered_json to_json(const TableResult& t) {
  ordered_json j;
  j["name"] = t.name;
  j["status"] = t.ok ? "ok" : "failed";
  if (!t.ok) j["error"] = t.error;
  j["class"] = t.cls ? ordered_json(std::string(to_string(*t.cls))) : ordered_json(nullptr);
  j["expected_class"] =
      t.expected_class ? ordered_json(std::string(to_string(*t.expected_class))) : ordered_json(nullptr);
  ordered_json ex = ordered_json::array();
  for (const auto& p : t.examples) ex.push_back({p.source.raw(), p.target.raw()});
  j["examples"] = ex;
  if (t.ok) j["match"] = std::string(to_string(t.match.mode));
  j["metrics"] = to_json(t.report);
  if (t.ok) j["artifact"] = to_json(t.artifact);
  ordered_json calls;
  for (std::size_t p = 0; p < kPurposeCount; ++p) calls[std::string(to_string(static_cast<Purpose>(p)))] = t.calls[p];
  j["llm_calls"] = calls;
  return j;
}

ordered_json to_json(const BenchmarkSummary& s) {
  ordered_json j;
  j["seed"] = s.seed;
  j["n_examples"] = s.n_examples;
  j["tables"] = ordered_json::array();
  for (const auto& t : s.tables) j["tables"].push_back(to_json(t));
  j["macro"] = metrics(s.precision, s.recall, s.f1, s.aed, s.aned);
  ordered_json per_class = ordered_json::array();
  for (const auto& c : s.per_class) {
    ordered_json row = metrics(c.precision, c.recall, c.f1, c.aed, c.aned);
    row["class"] = std::string(to_string(c.cls));
    row["tables"] = c.tables;
    per_class.push_back(row);
  }
  j["per_class"] = per_class;
  j["failed"] = s.failed;
  return j;
}

std::string render_text(const JoinReport& r) {
  return "precision " + fixed(r.precision) + "  recall " + fixed(r.recall) + "  f1 " + fixed(r.f1) + "  aed " +
         fixed(r.aed) + "  aned " + fixed(r.aned) + "  (" + std::to_string(r.correct) + " correct, " +
         std::to_string(r.matched) + " matched, " + std::to_string(r.rows.size()) + " rows)\n";
}

std::string render_text(const BenchmarkSummary& s) {
  std::size_t width = 8;
  for (const auto& t : s.tables) width = std::max(width, t.name.size() + 2);
  std::string out = pad("table", width) + pad("class", 13) + "P      R      F1     AED    ANED   status\n";
  for (const auto& t : s.tables) {
    out += pad(t.name, width) + pad(t.cls ? std::string(to_string(*t.cls)) : "-", 13);
    for (double v : {t.report.precision, t.report.recall, t.report.f1, t.report.aed, t.report.aned}) {
      out += pad(fixed(v), 7);
    }
    out += t.ok ? "ok" : "failed: " + t.error;
    out += '\n';
  }
  for (const auto& c : s.per_class) {
    out += pad("[" + std::string(to_string(c.cls)) + "]", width) + pad(std::to_string(c.tables) + " tables", 13);
    for (double v : {c.precision, c.recall, c.f1, c.aed, c.aned}) out += pad(fixed(v), 7);
    out += '\n';
  }
  out += pad("macro", width) + pad(std::to_string(s.tables.size()) + " tables", 13);
  for (double v : {s.precision, s.recall, s.f1, s.aed, s.aned}) out += pad(fixed(v), 7);
  out += std::to_string(s.failed) + " failed\n";
  return out;
}

}  // namespace xform
