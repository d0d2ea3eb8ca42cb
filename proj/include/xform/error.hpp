#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace xform {

enum class ErrorCode {
  // table
  EmptyExamples,
  BudgetTooSmall,
  IoError,
  MalformedCsv,
  WrongArity,
  // llm
  InvalidConfig,
  Timeout,
  RateLimited,
  FixtureMiss,
  AuthMissing,
  HttpError,
  BadResponse,
  BudgetExhausted,
  // classifier / codegen / general
  UnparsableLabel,
  UnparsableTag,
  SynthesisFailed,
  // fitting
  SingularNormalMatrix,
  NonFiniteResidual,
  InsufficientPoints,
  DomainError,
  AllFitsFailed,
  // language
  SyntaxError,
  ForbiddenConstruct,
  StepBudgetExceeded,
  RuntimeFault,
  OutputTooLong,
  // join
  NonNumericPrediction,
  ArityMismatch,
};

std::string_view error_code_name(ErrorCode code) noexcept;

/// Single exception type for the library; the code identifies the failure.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code), detail_(message) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }
  /// The message without the code prefix.
  [[nodiscard]] const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace xform
