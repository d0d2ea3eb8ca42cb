#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "xform/codegen/codegen.hpp"
#include "xform/general/general.hpp"
#include "xform/join/join.hpp"
#include "xform/lang/interpreter.hpp"
#include "xform/llm/gateway.hpp"
#include "xform/table/cell.hpp"

namespace xform {

struct RunConfig {
  BackendConfig backend;
  std::size_t n_examples = 5;
  std::uint64_t seed = 0;
  /// Empty means automatic: numeric for Numbers tables, edit distance otherwise.
  std::optional<MatchMode> match_mode;
  std::optional<double> max_distance;
  std::optional<double> min_distance;
  std::optional<TransformClass> class_override;
  lang::EvalLimits limits;
  std::filesystem::path output_dir;
  std::optional<std::filesystem::path> prompts_file;
  bool strict = false;
  std::size_t lookup_budget = 0;
  std::size_t lookup_concurrency = 8;
  bool guardrail = false;
  double max_aned = 0.5;
  std::size_t table_workers = 4;

  /// Throws InvalidConfig.
  void validate() const;

  [[nodiscard]] MatchOptions match_for(TransformClass cls) const;
  [[nodiscard]] CodegenOptions codegen_options() const;
  [[nodiscard]] GeneralOptions general_options() const;
};

/// Applies one `key=value` setting. Throws InvalidConfig for unknown keys or bad values.
void apply_config_entry(RunConfig& config, std::string_view key, std::string_view value);

/// Reads `key=value` lines; `#` starts a comment line.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

}  // namespace xform
