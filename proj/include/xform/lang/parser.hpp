#pragma once

#include <string_view>

#include "xform/lang/ast.hpp"

namespace xform::lang {

/// Parses either a full program (`fn` definitions then `transform(x) { ... }`)
/// or a bare expression, which becomes the body of `transform(x)`.
/// Throws LangError with SyntaxError or ForbiddenConstruct.
Ast parse_source(std::string_view source);

/// Names that look like I/O, process or environment access. Calling any of them
/// is rejected at parse time.
bool is_forbidden_call(std::string_view name) noexcept;

}  // namespace xform::lang
