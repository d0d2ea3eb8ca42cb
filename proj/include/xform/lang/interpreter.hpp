#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "xform/lang/ast.hpp"
#include "xform/lang/value.hpp"

namespace xform::lang {

struct EvalLimits {
  std::uint64_t max_steps = 100'000;
  std::size_t max_string_len = 65'536;
  std::size_t max_call_depth = 64;
};

/// Per-evaluation budget accounting shared by the interpreter and builtins.
class EvalContext {
 public:
  explicit EvalContext(const EvalLimits& limits) : limits_(limits) {}

  /// Charges `cost` steps; throws StepBudgetExceeded at the limit.
  void charge(std::uint64_t cost, const Span& at);
  /// Throws OutputTooLong when a string grows past the limit.
  void check_length(std::size_t len, const Span& at) const;

  [[nodiscard]] const EvalLimits& limits() const noexcept { return limits_; }
  [[nodiscard]] std::uint64_t steps() const noexcept { return steps_; }

  std::size_t depth = 0;

 private:
  EvalLimits limits_;
  std::uint64_t steps_ = 0;
};

/// Runs `ast` with `x` bound to `input` and, when present, `xn` to `numeric`.
/// Throws LangError: StepBudgetExceeded, RuntimeFault or OutputTooLong.
Value run(const Ast& ast, const std::string& input, const std::optional<double>& numeric,
          const EvalLimits& limits, std::uint64_t* steps_used = nullptr);

}  // namespace xform::lang
