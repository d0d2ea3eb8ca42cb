#pragma once

#include "xform/lang/ast.hpp"
#include "xform/lang/diagnostics.hpp"

namespace xform::lang {

/// Static checks: unknown names, arity, type-incoherent operands, misplaced
/// break/continue and a transform body without a value are errors; unreachable
/// statements and shadowed bindings are warnings.
Diagnostics check(const Ast& ast);

}  // namespace xform::lang
