#pragma once

#include <string>

#include <json.hpp>

#include "xform/join/join.hpp"
#include "xform/pipeline/benchmark.hpp"

namespace xform {

using ordered_json = nlohmann::ordered_json;

ordered_json to_json(const fit::FitResult& fit);
ordered_json to_json(const JoinReport& report, bool include_rows = true);
ordered_json to_json(const TableArtifact& artifact);
ordered_json to_json(const TableResult& table);
ordered_json to_json(const BenchmarkSummary& summary);

/// Aligned plain-text table of per-table and macro metrics.
std::string render_text(const BenchmarkSummary& summary);
std::string render_text(const JoinReport& report);

}  // namespace xform
