#include "xform/lang/program.hpp"

#include "xform/lang/checker.hpp"
#include "xform/lang/parser.hpp"

namespace xform {

const char* to_string(ProgramOrigin origin) noexcept {
  switch (origin) {
    case ProgramOrigin::NumericFit: return "numeric-fit";
    case ProgramOrigin::StringGen: return "string-gen";
    case ProgramOrigin::AlgoGen: return "algo-gen";
  }
  return "string-gen";
}

TransformProgram parse_program(std::string_view source, ProgramOrigin origin) {
  TransformProgram p;
  p.ast = lang::parse_source(source);
  p.source_text = std::string(source);
  p.origin = origin;
  return p;
}

lang::Diagnostics check_program(const TransformProgram& program) { return lang::check(program.ast); }

CellValue evaluate(const TransformProgram& program, const CellValue& input, const lang::EvalLimits& limits,
                   std::uint64_t* steps_used) {
  const lang::Value v = lang::run(program.ast, input.raw(), input.numeric(), limits, steps_used);
  std::string text;
  if (!lang::to_text(v, text)) {
    throw lang::LangError(ErrorCode::RuntimeFault,
                          std::string("transform produced a ") + lang::type_name(v) + " instead of a value",
                          program.ast.body.span);
  }
  if (text.size() > limits.max_string_len) {
    throw lang::LangError(ErrorCode::OutputTooLong, "result exceeds the length limit", program.ast.body.span);
  }
  return CellValue(std::move(text));
}

}  // namespace xform
