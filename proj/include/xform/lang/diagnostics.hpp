#pragma once

#include <string>
#include <vector>

#include "xform/error.hpp"
#include "xform/lang/ast.hpp"

namespace xform::lang {

enum class Severity { Warning, Error };

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string message;
  Span span;
};

struct Diagnostics {
  std::vector<Diagnostic> items;

  [[nodiscard]] bool has_errors() const noexcept;
  [[nodiscard]] std::size_t error_count() const noexcept;
  /// One `line:col: severity: message` per line.
  [[nodiscard]] std::string render() const;
};

/// Language error carrying the offending source location.
class LangError : public Error {
 public:
  LangError(ErrorCode code, const std::string& message, Span span)
      : Error(code, std::to_string(span.line) + ":" + std::to_string(span.column) + ": " + message), span_(span) {}

  [[nodiscard]] const Span& span() const noexcept { return span_; }

 private:
  Span span_;
};

}  // namespace xform::lang
