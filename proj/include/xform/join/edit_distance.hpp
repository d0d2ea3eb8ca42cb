#pragma once

#include <cstddef>
#include <string_view>

namespace xform {

/// Levenshtein distance with unit costs over Unicode scalar values.
std::size_t edit_distance(std::u32string_view a, std::u32string_view b);
std::size_t edit_distance(std::string_view a, std::string_view b);

/// edit_distance(a, b) / max(1, length of b in scalar values).
double normalized_edit_distance(std::string_view prediction, std::string_view target);

}  // namespace xform
