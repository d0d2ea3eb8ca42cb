#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "xform/table/cell.hpp"

namespace xform {

/// `("s" -> "t")`, with embedded double quotes doubled.
std::string serialize_pair(const ExamplePair& pair);

/// Indices (ascending) of the pairs that `serialize_examples` keeps under `max_chars`.
/// Everything is kept when it fits; otherwise a seeded random order is filled greedily.
std::vector<std::size_t> sample_for_budget(std::span<const ExamplePair> examples, std::size_t max_chars,
                                           std::uint64_t seed);

/// Pairs joined by ", ". Throws EmptyExamples, or BudgetTooSmall when no single pair fits.
std::string serialize_examples(std::span<const ExamplePair> examples, std::size_t max_chars,
                               std::uint64_t seed);

/// Inverse of serialize_examples. Throws MalformedCsv on text it did not produce.
std::vector<std::pair<std::string, std::string>> parse_serialized_examples(std::string_view text);

/// `Input: <s>, Expected output: <t>` per line.
std::string format_testcases(std::span<const ExamplePair> examples);

}  // namespace xform
