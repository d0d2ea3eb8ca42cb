#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace xform::utf8 {

/// True when `text` is well-formed UTF-8 (no overlongs, no surrogates).
bool is_valid(std::string_view text) noexcept;

/// Decodes to Unicode scalar values. Malformed bytes decode as U+FFFD.
std::u32string decode(std::string_view text);

void append(std::string& out, char32_t cp);
std::string encode(std::u32string_view cps);

/// Number of scalar values.
std::size_t length(std::string_view text);

}  // namespace xform::utf8
