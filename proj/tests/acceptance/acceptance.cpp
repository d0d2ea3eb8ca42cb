// One PASS/FAIL line per acceptance criterion. Exit status covers 1-9; the
// full-scale line (10) needs live model access and always reports FAIL here.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include <json.hpp>

#include "mini_bench.hpp"
#include "oracles.hpp"
#include "xform/fit/fitter.hpp"
#include "xform/join/join.hpp"
#include "xform/lang/builtins.hpp"
#include "xform/lang/checker.hpp"
#include "xform/pipeline/benchmark.hpp"
#include "xform/table/serialize.hpp"

using namespace xform;
using namespace xform::fit;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double got, double want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Instance {
  ModelFamily family;
  Params params;
  std::vector<Point> points;
};

// 100 per family, parameters uniform in [0.1, 10], eight points at x = 0.4 + 0.2k.
std::vector<Instance> recovery_instances() {
  std::mt19937_64 rng(20240905);
  std::uniform_real_distribution<double> param(0.1, 10.0);
  std::vector<Instance> out;
  for (const auto& info : model_families()) {
    for (int i = 0; i < 100; ++i) {
      Instance inst{info.family, {param(rng), param(rng), info.arity == 3 ? param(rng) : 0.0}, {}};
      for (int k = 0; k < 8; ++k) {
        const double x = 0.4 + 0.2 * k;
        inst.points.emplace_back(x, info.value(inst.params, x));
      }
      out.push_back(std::move(inst));
    }
  }
  return out;
}

Verdict curve_recovery() {
  const auto instances = recovery_instances();
  const auto t0 = Clock::now();
  std::size_t bad = 0;
  double worst_rel = 0;
  double worst_mse = 0;
  for (const auto& inst : instances) {
    try {
      const auto r = fit_family(inst.points, inst.family);
      bool ok = r.mse <= 1e-12;
      for (int j = 0; j < family_info(inst.family).arity; ++j) {
        const double e = rel(r.params[j], inst.params[j]);
        worst_rel = std::max(worst_rel, e);
        ok = ok && e <= 1e-6;
      }
      worst_mse = std::max(worst_mse, r.mse);
      if (!ok) ++bad;
    } catch (const Error&) {
      ++bad;
    }
  }
  const double secs = seconds_since(t0);
  return {bad == 0 && secs < 2.0, std::to_string(instances.size() - bad) + "/" + std::to_string(instances.size()) +
                                      " recovered, worst rel " + fmt("%.2e", worst_rel) + ", worst mse " +
                                      fmt("%.2e", worst_mse) + ", " + fmt("%.3f", secs) + " s"};
}

Verdict model_selection() {
  std::size_t right = 0;
  const auto instances = recovery_instances();
  for (const auto& inst : instances) {
    std::vector<FitResult> ok;
    for (auto& a : fit_all(inst.points)) {
      if (auto* f = std::get_if<FitResult>(&a.outcome)) ok.push_back(*f);
    }
    if (!ok.empty() && select_best(ok).family == inst.family) ++right;
  }
  // Linear data is fitted exactly by Polynomial2 too; the tie-break must pick Linear.
  std::size_t linear_ties = 0;
  std::size_t linear_total = 0;
  for (const auto& inst : instances) {
    if (inst.family != ModelFamily::Linear) continue;
    ++linear_total;
    std::vector<FitResult> pair{fit_family(inst.points, ModelFamily::Polynomial2),
                                fit_family(inst.points, ModelFamily::Linear)};
    if (select_best(pair).family == ModelFamily::Linear) ++linear_ties;
  }
  return {right == instances.size() && linear_ties == linear_total,
          std::to_string(right) + "/" + std::to_string(instances.size()) + " generator family chosen, Linear over " +
              "Polynomial2 on " + std::to_string(linear_ties) + "/" + std::to_string(linear_total)};
}

Verdict weight_table() {
  const std::vector<ExamplePair> ex{{"2", "0.9"}, {"51.5", "23.4"}, {"73", "33.1"}};
  std::vector<Point> pts{{2, 0.9}, {51.5, 23.4}, {73, 33.1}};
  const auto lin = fit_family(pts, ModelFamily::Linear);
  const int decimals = infer_target_precision(ex);
  const auto prog = emit_numeric_program(lin, decimals);
  ExampleSet set;
  set.examples = ex;
  std::vector<std::optional<CellValue>> preds;
  std::size_t exact_rows = 0;
  for (const auto& e : ex) {
    set.source_column.push_back(e.source);
    const auto out = evaluate(prog, e.source);
    if (out.raw() == e.target.raw()) ++exact_rows;
    preds.emplace_back(out);
  }
  set.target_column = Column{};
  for (const auto& e : ex) set.target_column->push_back(e.target);
  const auto gold = positional_gold(set);
  MatchOptions numeric;
  numeric.mode = MatchMode::NumericDistance;
  MatchOptions exact;
  exact.mode = MatchMode::Exact;
  const double f_num = join(set, preds, numeric, gold, TransformClass::Numbers).f1;
  const double f_exact = join(set, preds, exact, gold, TransformClass::Numbers).f1;
  return {decimals == 1 && exact_rows == 3 && f_num == 1.0 && f_exact == 1.0,
          "slope " + fmt("%.6f", lin.params[0]) + ", " + std::to_string(decimals) + " decimal, " +
              std::to_string(exact_rows) + "/3 exact, F1 numeric " + fmt("%.3f", f_num) + " exact " +
              fmt("%.3f", f_exact)};
}

Verdict jacobians() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> param(0.1, 10.0);
  std::uniform_real_distribution<double> at(0.2, 2.0);
  std::size_t bad = 0;
  std::size_t checked = 0;
  double worst = 0;
  for (const auto& info : model_families()) {
    for (int draw = 0; draw < 100; ++draw) {
      const Params p{param(rng), param(rng), param(rng)};
      const double x = at(rng);
      double g[3] = {0, 0, 0};
      info.gradient(p, x, g);
      for (int j = 0; j < info.arity; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(p[j]));
        Params up = p;
        Params dn = p;
        up[j] += h;
        dn[j] -= h;
        const double fd = (info.value(up, x) - info.value(dn, x)) / (2 * h);
        const double e = std::abs(fd - g[j]) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, e);
        ++checked;
        if (e > 1e-5) ++bad;
      }
    }
  }
  return {bad == 0, std::to_string(checked - bad) + "/" + std::to_string(checked) + " partials, worst rel " +
                        fmt("%.2e", worst)};
}

Verdict edit_distance_check() {
  const auto t0 = Clock::now();
  std::size_t pairs = 0;
  std::size_t bad = 0;
  // Every pair with both sides up to 7 letters.
  const auto short_words = testing::all_strings("abc", 7);
  for (const auto& a : short_words) {
    for (const auto& b : short_words) {
      ++pairs;
      if (edit_distance(a, b) != testing::dp_edit_distance(a, b)) ++bad;
    }
  }
  // Every string up to 12 letters against fixed probes.
  const std::vector<std::string> probes{"",           "a",           "cab",          "abcabc",      "aaaaaaaaaaaa",
                                        "abcabcabcabc", "cbacbacbacba", "ababababcccc", "bcabcaacbbca", "ccccccbbbbbb"};
  const auto long_words = testing::all_strings("abc", 12);
  for (const auto& a : long_words) {
    for (const auto& p : probes) {
      ++pairs;
      if (edit_distance(a, p) != testing::dp_edit_distance(a, p)) ++bad;
    }
  }
  testing::Lcg rng(12);
  for (int i = 0; i < 100000; ++i) {
    const auto a = rng.word("abc", 12);
    const auto b = rng.word("abc", 12);
    ++pairs;
    if (edit_distance(a, b) != testing::dp_edit_distance(a, b)) ++bad;
  }
  std::size_t axiom_bad = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto a = rng.word("abc", 12);
    const auto b = rng.word("abc", 12);
    const auto c = rng.word("abc", 12);
    const auto ab = edit_distance(a, b);
    const bool ok = ab == edit_distance(b, a) && (ab == 0) == (a == b) && edit_distance(a, c) <= ab + edit_distance(b, c);
    if (!ok) ++axiom_bad;
  }
  return {bad == 0 && axiom_bad == 0,
          std::to_string(pairs - bad) + "/" + std::to_string(pairs) +
              " pairs match the DP oracle (all pairs to length 7, all strings to length 12 x 10 probes, 1e5 random " +
              "length-12 pairs), 1e4 triples satisfy the axioms with " + std::to_string(axiom_bad) + " violations, " +
              fmt("%.1f", seconds_since(t0)) + " s"};
}

Verdict conformance() {
  const auto doc =
      nlohmann::json::parse(std::ifstream(std::string(XFORM_SOURCE_DIR) + "/tests/data/conformance.json"));
  std::size_t programs = 0;
  std::size_t good = 0;
  std::string all;
  std::set<std::string> names;
  for (const auto& entry : doc.at("programs")) {
    ++programs;
    const std::string src = entry.at("program");
    all += src + "\n";
    names.insert(entry.at("name").get<std::string>());
    try {
      const auto prog = parse_program(src);
      bool ok = !check_program(prog).has_errors();
      for (const auto& c : entry.at("cases")) {
        ok = ok && evaluate(prog, CellValue(c.at(0).get<std::string>())).raw() == c.at(1).get<std::string>();
      }
      if (ok) ++good;
    } catch (const Error&) {
    }
  }
  std::size_t covered = 0;
  const auto builtins = lang::all_builtins();
  for (const auto& b : builtins) {
    if (all.find(std::string(b.name) + "(") != std::string::npos) ++covered;
  }
  const bool required = names.count("username") && names.count("codepoint to decimal") &&
                        names.count("binary to hexadecimal");
  const auto loop = parse_program("transform(x) {\n  while true { }\n  x\n}");
  const auto t0 = Clock::now();
  bool stopped = false;
  try {
    evaluate(loop, CellValue("a"));
  } catch (const Error& e) {
    stopped = e.code() == ErrorCode::StepBudgetExceeded;
  }
  const double ms = seconds_since(t0) * 1000;
  return {programs >= 30 && good == programs && covered == builtins.size() && required && stopped && ms < 100,
          std::to_string(good) + "/" + std::to_string(programs) + " golden programs, " + std::to_string(covered) + "/" +
              std::to_string(builtins.size()) + " builtins, loop stopped " + (stopped ? "by step budget" : "wrongly") +
              " in " + fmt("%.1f", ms) + " ms"};
}

Verdict serialization() {
  const std::vector<ExamplePair> pairs{{"Microsoft", "Satya Nadella"}, {"PepsiCo", "Ramon Laguarta"}};
  const std::string want = R"(("Microsoft" -> "Satya Nadella"), ("PepsiCo" -> "Ramon Laguarta"))";
  const std::string got = serialize_examples(pairs, 4000, 0);
  return {got == want, got};
}

Verdict mini_benchmark() {
  const auto edit = run_benchmark(testing::mini_dir(), testing::mini_config(MatchMode::EditDistance));
  const auto exact = run_benchmark(testing::mini_dir(), testing::mini_config(MatchMode::Exact));
  bool ok = edit.tables.size() == exact.tables.size() && edit.failed == 0 && exact.failed == 0;
  std::map<TransformClass, int> per_class;
  std::size_t perfect = 0;
  std::size_t agree = 0;
  std::size_t expected_rows = 0;
  double worst = 0;
  for (const MatchMode mode : {MatchMode::EditDistance, MatchMode::Exact}) {
    const auto& s = mode == MatchMode::Exact ? exact : edit;
    const auto expected = testing::mini_expected(mode);
    ok = ok && s.tables.size() == expected.size();
    for (const auto& e : expected) {
      ++expected_rows;
      const TableResult* t = nullptr;
      for (const auto& cand : s.tables) {
        if (cand.name == e.name) t = &cand;
      }
      if (t == nullptr) {
        ok = false;
        continue;
      }
      const double diff = std::max({std::abs(t->report.precision - e.precision), std::abs(t->report.recall - e.recall),
                                    std::abs(t->report.f1 - e.f1), std::abs(t->report.aed - e.aed),
                                    std::abs(t->report.aned - e.aned)});
      worst = std::max(worst, diff);
      if (diff <= 1e-9 && t->cls == e.cls) ++agree;
      if (mode == MatchMode::EditDistance) {
        ++per_class[e.cls];
        if (t->report.f1 == 1.0) ++perfect;
        const std::size_t rows = t->report.rows.size();
        ok = ok && rows >= 5 && rows <= 20;
      }
    }
  }
  for (const auto& [cls, n] : per_class) ok = ok && n >= 2;
  ok = ok && per_class.size() == 4 && agree == expected_rows && perfect == edit.tables.size();
  std::size_t relaxed = 0;
  for (std::size_t i = 0; i < std::min(edit.tables.size(), exact.tables.size()); ++i) {
    if (edit.tables[i].report.f1 >= exact.tables[i].report.f1) ++relaxed;
  }
  ok = ok && relaxed == edit.tables.size();
  return {ok, std::to_string(perfect) + "/" + std::to_string(edit.tables.size()) + " tables at edit-distance F1 1, " +
                  std::to_string(agree) + "/" + std::to_string(expected_rows) +
                  " table-mode metric sets match hand values (worst diff " + fmt("%.1e", worst) + "), edit F1 >= " +
                  "exact F1 on " + std::to_string(relaxed) + "/" + std::to_string(edit.tables.size())};
}

Verdict failure_accounting() {
  auto cfg = testing::mini_config(MatchMode::EditDistance);
  cfg.backend.fixture_dir = std::string(XFORM_SOURCE_DIR) + "/tests/data/failure_fixtures";
  cfg.n_examples = 2;
  const auto s = run_benchmark(std::string(XFORM_SOURCE_DIR) + "/tests/data/failure", cfg);
  if (s.tables.size() != 1 || !s.tables[0].ok) return {false, "failure table did not run"};
  const auto& r = s.tables[0].report;
  const bool ok = r.recall == 2.0 / 3.0 && r.precision == 1.0 && r.f1 == 0.8 && s.tables[0].artifact.row_errors.size() == 1;
  return {ok, "recall " + fmt("%.17g", r.recall) + ", precision " + fmt("%.17g", r.precision) + ", F1 " +
                  fmt("%.17g", r.f1)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* title;
    std::function<Verdict()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "curve-fit recovery", curve_recovery},
      {2, "model selection", model_selection},
      {3, "weight table linear fit and join", weight_table},
      {4, "jacobian correctness", jacobians},
      {5, "edit distance oracle and metric axioms", edit_distance_check},
      {6, "interpreter conformance", conformance},
      {7, "serialization exactness", serialization},
      {8, "mini benchmark replay", mini_benchmark},
      {9, "failure accounting", failure_accounting},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::printf("%s %2d %s: %s\n", v.pass ? "PASS" : "FAIL", c.id, c.title, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("FAIL 10 full-scale benchmark results: not measured, needs live model credentials and the full "
              "datasets; see `xform bench --backend http` in the README\n");
  return failed == 0 ? 0 : 1;
}
