#include "xform/general/general.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <thread>

#include "xform/join/edit_distance.hpp"
#include "xform/table/numeric_text.hpp"
#include "xform/table/serialize.hpp"

namespace xform {

LookupPlan::LookupPlan(RelationshipTag tag, std::vector<ExamplePair> examples, std::size_t budget)
    : tag_(std::move(tag)), examples_(std::move(examples)), budget_(budget) {
  for (const auto& ex : examples_) cache_.emplace(ex.source.raw(), ex.target.raw());
}

std::optional<std::optional<std::string>> LookupPlan::cached(const std::string& source) const {
  std::lock_guard lock(mutex_);
  auto it = cache_.find(source);
  if (it == cache_.end()) return std::nullopt;
  return it->second;
}

void LookupPlan::store(const std::string& source, std::optional<std::string> target) {
  std::lock_guard lock(mutex_);
  cache_[source] = std::move(target);
}

bool LookupPlan::reserve_call() {
  std::size_t cur = used_.load();
  while (cur < budget_) {
    if (used_.compare_exchange_weak(cur, cur + 1)) return true;
  }
  return false;
}

std::vector<std::pair<std::string, std::string>> LookupPlan::table() const {
  std::lock_guard lock(mutex_);
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : cache_) {
    if (v) out.emplace_back(k, *v);
  }
  return out;
}

RelationshipTag detect_column_types(std::span<const ExamplePair> examples, Gateway& gateway,
                                    const PromptCatalog& catalog, const GeneralOptions& options) {
  CodegenOptions co;
  co.max_serialized_chars = options.max_serialized_chars;
  co.seed = options.seed;
  return request_tag(examples, gateway, "coltype.user", Purpose::TypeDetect, catalog, co);
}

PromptRequest build_lookup_prompt(const std::string& source, const LookupPlan& plan, const PromptCatalog& catalog,
                                  const GeneralOptions& options) {
  PromptRequest req;
  req.purpose = Purpose::Lookup;
  req.system_text = catalog.get("lookup.system");
  req.user_text = catalog.render(
      "lookup.user", {{"tag", plan.tag().rendered()},
                      {"examples", serialize_examples(plan.examples(), options.max_serialized_chars, options.seed)},
                      {"value", source}});
  req.max_output_chars = 400;
  return req;
}

std::optional<std::string> clean_lookup_answer(std::string_view completion) {
  std::string_view line;
  std::size_t pos = 0;
  while (pos <= completion.size()) {
    auto nl = completion.find('\n', pos);
    if (nl == std::string_view::npos) nl = completion.size();
    line = trim(completion.substr(pos, nl - pos));
    if (!line.empty() || nl == completion.size()) break;
    pos = nl + 1;
  }
  for (std::string_view label : {"Target value:", "target value:", "Answer:", "answer:"}) {
    if (line.starts_with(label)) line = trim(line.substr(label.size()));
  }
  while (line.size() >= 2 && ((line.front() == '"' && line.back() == '"') || (line.front() == '\'' && line.back() == '\''))) {
    line = trim(line.substr(1, line.size() - 2));
  }
  std::string lower(line);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c); });
  while (!lower.empty() && lower.back() == '.') lower.pop_back();
  if (lower.empty() || lower == "unknown" || lower == "n/a") return std::nullopt;
  return std::string(line);
}

std::optional<CellValue> lookup_value(const CellValue& source, LookupPlan& plan, Gateway& gateway,
                                      const PromptCatalog& catalog, const GeneralOptions& options) {
  if (auto hit = plan.cached(source.raw())) {
    if (!*hit) return std::nullopt;
    return CellValue(**hit);
  }
  if (!plan.reserve_call()) {
    throw Error(ErrorCode::BudgetExhausted, "lookup budget of " + std::to_string(plan.budget()) + " calls is spent");
  }
  const Completion c = gateway.complete(build_lookup_prompt(source.raw(), plan, catalog, options));
  auto answer = clean_lookup_answer(c.text);
  plan.store(source.raw(), answer);
  if (!answer) return std::nullopt;
  return CellValue(*answer);
}

std::vector<std::optional<CellValue>> guardrail_verify(std::span<const std::optional<CellValue>> resolved,
                                                       std::span<const CellValue> targets, double max_aned,
                                                       std::vector<std::size_t>* dropped) {
  std::vector<std::optional<CellValue>> out(resolved.begin(), resolved.end());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (!out[i]) continue;
    double nearest = INFINITY;
    for (const auto& t : targets) {
      nearest = std::min(nearest, normalized_edit_distance(out[i]->raw(), t.raw()));
      if (nearest == 0) break;
    }
    if (nearest > max_aned) {
      out[i].reset();
      if (dropped != nullptr) dropped->push_back(i);
    }
  }
  return out;
}

namespace {

bool fatal(const Error& e) { return e.code() == ErrorCode::InvalidConfig || e.code() == ErrorCode::AuthMissing; }

}  // namespace

GeneralOutcome transform_general(const ExampleSet& set, Gateway& gateway, const PromptCatalog& catalog,
                                 const GeneralOptions& options) {
  GeneralOutcome out;
  out.predictions.resize(set.source_column.size());
  if (set.source_column.empty()) return out;
  if (set.examples.empty()) throw Error(ErrorCode::EmptyExamples, "lookups need at least one example");

  try {
    out.tag = detect_column_types(set.examples, gateway, catalog, options);
  } catch (const Error& e) {
    if (fatal(e)) throw;
    out.tag = {"source value", "target value"};
    out.warnings.push_back(std::string("type detection failed, using a generic tag: ") + e.what());
  }

  // Distinct uncached values in first-appearance order; the budget goes to the earliest ones.
  LookupPlan plan(out.tag, set.examples, 0);
  std::vector<std::string> pending;
  std::set<std::string> seen;
  for (const auto& cell : set.source_column) {
    if (plan.cached(cell.raw()) || !seen.insert(cell.raw()).second) continue;
    pending.push_back(cell.raw());
  }
  const std::size_t budget = options.budget == 0 ? pending.size() : std::min(options.budget, pending.size());
  if (budget < pending.size()) {
    out.warnings.push_back("lookup budget covers " + std::to_string(budget) + " of " + std::to_string(pending.size()) +
                           " distinct values; the rest stay unmapped");
  }
  LookupPlan work(out.tag, set.examples, budget);

  std::vector<std::string> errors(budget);
  std::vector<std::exception_ptr> fatal_errors(budget);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t k = next.fetch_add(1);
      if (k >= budget) return;
      try {
        lookup_value(CellValue(pending[k]), work, gateway, catalog, options);
      } catch (const Error& e) {
        if (fatal(e)) {
          fatal_errors[k] = std::current_exception();
        } else {
          errors[k] = e.what();
        }
      }
    }
  };
  const std::size_t threads = std::max<std::size_t>(1, std::min(options.concurrency, budget));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (const auto& f : fatal_errors) {
    if (f) std::rethrow_exception(f);
  }
  for (std::size_t k = 0; k < budget; ++k) {
    if (!errors[k].empty()) out.warnings.push_back("lookup of \"" + pending[k] + "\" failed: " + errors[k]);
  }

  for (std::size_t i = 0; i < set.source_column.size(); ++i) {
    if (auto hit = work.cached(set.source_column[i].raw()); hit && *hit) out.predictions[i] = CellValue(**hit);
  }
  out.lookup_calls = work.calls_used();
  out.lookup_table = work.table();

  if (options.guardrail && set.target_column) {
    out.predictions = guardrail_verify(out.predictions, *set.target_column, options.max_aned, &out.guardrail_dropped);
  }
  return out;
}

}  // namespace xform
