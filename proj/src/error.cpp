#include "xform/error.hpp"

namespace xform {

std::string_view error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyExamples: return "EmptyExamples";
    case ErrorCode::BudgetTooSmall: return "BudgetTooSmall";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedCsv: return "MalformedCsv";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::RateLimited: return "RateLimited";
    case ErrorCode::FixtureMiss: return "FixtureMiss";
    case ErrorCode::AuthMissing: return "AuthMissing";
    case ErrorCode::HttpError: return "HttpError";
    case ErrorCode::BadResponse: return "BadResponse";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::UnparsableLabel: return "UnparsableLabel";
    case ErrorCode::UnparsableTag: return "UnparsableTag";
    case ErrorCode::SynthesisFailed: return "SynthesisFailed";
    case ErrorCode::SingularNormalMatrix: return "SingularNormalMatrix";
    case ErrorCode::NonFiniteResidual: return "NonFiniteResidual";
    case ErrorCode::InsufficientPoints: return "InsufficientPoints";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::AllFitsFailed: return "AllFitsFailed";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::ForbiddenConstruct: return "ForbiddenConstruct";
    case ErrorCode::StepBudgetExceeded: return "StepBudgetExceeded";
    case ErrorCode::RuntimeFault: return "RuntimeFault";
    case ErrorCode::OutputTooLong: return "OutputTooLong";
    case ErrorCode::NonNumericPrediction: return "NonNumericPrediction";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
  }
  return "Unknown";
}

}  // namespace xform
