#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "xform/lang/ast.hpp"
#include "xform/lang/diagnostics.hpp"
#include "xform/lang/interpreter.hpp"
#include "xform/table/cell.hpp"

namespace xform {

enum class ProgramOrigin { NumericFit, StringGen, AlgoGen };

const char* to_string(ProgramOrigin origin) noexcept;

/// A parsed transformation. Immutable once built, so it can be shared across
/// threads evaluating different rows.
struct TransformProgram {
  lang::Ast ast;
  std::string source_text;
  ProgramOrigin origin = ProgramOrigin::StringGen;
};

/// Throws lang::LangError (SyntaxError, ForbiddenConstruct).
TransformProgram parse_program(std::string_view source, ProgramOrigin origin = ProgramOrigin::StringGen);

lang::Diagnostics check_program(const TransformProgram& program);

/// Runs the program on one cell and renders the result as text. A nil or
/// list result is a RuntimeFault.
CellValue evaluate(const TransformProgram& program, const CellValue& input,
                   const lang::EvalLimits& limits = {}, std::uint64_t* steps_used = nullptr);

}  // namespace xform
