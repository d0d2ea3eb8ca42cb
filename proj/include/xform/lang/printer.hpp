#pragma once

#include <string>

#include "xform/lang/ast.hpp"

namespace xform::lang {

/// Canonical source: full `transform(x)` form, every binary and unary
/// expression parenthesized, simple statements terminated by `;`.
/// parse_source(print(ast)) is structurally equal to `ast`.
std::string print(const Ast& ast);
std::string print(const Expr& expr);

std::string quote_string(std::string_view value);
std::string format_real_literal(double value);

}  // namespace xform::lang
