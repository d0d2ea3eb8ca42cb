#include "xform/pipeline/config.hpp"

#include <charconv>

#include "xform/error.hpp"
#include "xform/table/csv.hpp"
#include "xform/table/numeric_text.hpp"

namespace xform {

void RunConfig::validate() const {
  backend.validate();
  if (n_examples == 0) throw Error(ErrorCode::InvalidConfig, "n_examples must be positive");
  if (limits.max_steps == 0 || limits.max_string_len == 0 || limits.max_call_depth == 0) {
    throw Error(ErrorCode::InvalidConfig, "evaluation limits must be positive");
  }
  if (lookup_concurrency == 0 || table_workers == 0) throw Error(ErrorCode::InvalidConfig, "worker counts must be positive");
  if (max_aned < 0) throw Error(ErrorCode::InvalidConfig, "max_aned must be non-negative");
  if (max_distance && *max_distance < 0) throw Error(ErrorCode::InvalidConfig, "max_distance must be non-negative");
}

MatchOptions RunConfig::match_for(TransformClass cls) const {
  MatchOptions m;
  m.mode = match_mode.value_or(cls == TransformClass::Numbers ? MatchMode::NumericDistance : MatchMode::EditDistance);
  m.max_distance = max_distance;
  m.min_distance = min_distance;
  return m;
}

CodegenOptions RunConfig::codegen_options() const {
  CodegenOptions o;
  o.strict = strict;
  o.limits = limits;
  o.seed = seed;
  return o;
}

GeneralOptions RunConfig::general_options() const {
  GeneralOptions o;
  o.budget = lookup_budget;
  o.concurrency = lookup_concurrency;
  o.guardrail = guardrail;
  o.max_aned = max_aned;
  o.seed = seed;
  return o;
}

namespace {

template <typename T>
T parse_unsigned(std::string_view key, std::string_view v) {
  T out{};
  const auto* end = v.data() + v.size();
  const auto [p, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || p != end) {
    throw Error(ErrorCode::InvalidConfig, std::string(key) + ": expected a non-negative integer, got \"" + std::string(v) + "\"");
  }
  return out;
}

double parse_real(std::string_view key, std::string_view v) {
  const auto d = parse_numeric(v);
  if (!d) throw Error(ErrorCode::InvalidConfig, std::string(key) + ": expected a number, got \"" + std::string(v) + "\"");
  return *d;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error(ErrorCode::InvalidConfig, std::string(key) + ": expected true or false");
}

}  // namespace

void apply_config_entry(RunConfig& c, std::string_view key, std::string_view raw) {
  const std::string_view v = trim(raw);
  const std::string k(trim(key));
  if (k == "backend") {
    const auto m = parse_backend_mode(v);
    if (!m) throw Error(ErrorCode::InvalidConfig, "backend must be http, replay or record");
    c.backend.mode = *m;
  } else if (k == "endpoint") {
    c.backend.endpoint = std::string(v);
  } else if (k == "model") {
    c.backend.model_name = std::string(v);
  } else if (k == "api_key_env") {
    c.backend.api_key_env = std::string(v);
  } else if (k == "fixtures") {
    c.backend.fixture_dir = std::string(v);
  } else if (k == "timeout") {
    c.backend.timeout = std::chrono::milliseconds(static_cast<long long>(parse_real(k, v) * 1000));
  } else if (k == "max_retries") {
    c.backend.max_retries = parse_unsigned<int>(k, v);
  } else if (k == "max_calls") {
    c.backend.max_total_calls = parse_unsigned<std::size_t>(k, v);
  } else if (k == "n_examples") {
    c.n_examples = parse_unsigned<std::size_t>(k, v);
  } else if (k == "seed") {
    c.seed = parse_unsigned<std::uint64_t>(k, v);
  } else if (k == "match") {
    if (v == "auto") {
      c.match_mode.reset();
    } else if (auto m = parse_match_mode(v)) {
      c.match_mode = *m;
    } else {
      throw Error(ErrorCode::InvalidConfig, "match must be exact, edit, numeric or auto");
    }
  } else if (k == "max_distance") {
    c.max_distance = parse_real(k, v);
  } else if (k == "min_distance") {
    c.min_distance = parse_real(k, v);
  } else if (k == "class") {
    if (v == "auto") {
      c.class_override.reset();
    } else if (auto cls = parse_transform_class(v)) {
      c.class_override = *cls;
    } else {
      throw Error(ErrorCode::InvalidConfig, "class must be String, Numbers, Algorithmic or General");
    }
  } else if (k == "max_steps") {
    c.limits.max_steps = parse_unsigned<std::uint64_t>(k, v);
  } else if (k == "max_string_len") {
    c.limits.max_string_len = parse_unsigned<std::size_t>(k, v);
  } else if (k == "max_call_depth") {
    c.limits.max_call_depth = parse_unsigned<std::size_t>(k, v);
  } else if (k == "out") {
    c.output_dir = std::string(v);
  } else if (k == "prompts") {
    c.prompts_file = std::filesystem::path(std::string(v));
  } else if (k == "strict") {
    c.strict = parse_bool(k, v);
  } else if (k == "lookup_budget") {
    c.lookup_budget = parse_unsigned<std::size_t>(k, v);
  } else if (k == "concurrency") {
    c.lookup_concurrency = parse_unsigned<std::size_t>(k, v);
  } else if (k == "guardrail") {
    c.guardrail = parse_bool(k, v);
  } else if (k == "max_aned") {
    c.max_aned = parse_real(k, v);
  } else if (k == "workers") {
    c.table_workers = parse_unsigned<std::size_t>(k, v);
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown config key '" + k + "'");
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  std::size_t pos = 0;
  int line_no = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string_view line = trim(std::string_view(text).substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::InvalidConfig, path.string() + ":" + std::to_string(line_no) + ": expected key=value");
    }
    try {
      apply_config_entry(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidConfig, path.string() + ":" + std::to_string(line_no) + ": " + e.detail());
    }
  }
}

}  // namespace xform
