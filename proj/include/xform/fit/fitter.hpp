#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "xform/fit/families.hpp"
#include "xform/fit/levenberg_marquardt.hpp"
#include "xform/lang/program.hpp"
#include "xform/table/cell.hpp"

namespace xform::fit {

struct FitResult {
  ModelFamily family = ModelFamily::Linear;
  Params params{0, 0, 0};  // unused trailing entries are zero
  double mse = 0;
  int iterations = 0;
  bool converged = false;
};

/// Seeds per family, then Levenberg-Marquardt. Throws InsufficientPoints,
/// DomainError, SingularNormalMatrix or NonFiniteResidual.
FitResult fit_family(std::span<const Point> points, ModelFamily family, const LmOptions<double>& opts = {});

/// Lowest MSE; near-ties go to the simpler family. Throws AllFitsFailed when empty.
FitResult select_best(std::span<const FitResult> fits);

struct FamilyAttempt {
  ModelFamily family;
  std::variant<FitResult, Error> outcome;
};

/// Every registered family; failures are kept, not thrown.
std::vector<FamilyAttempt> fit_all(std::span<const Point> points, const LmOptions<double>& opts = {});

double mean_squared_error(std::span<const Point> points, ModelFamily family, const Params& params);

/// Largest number of fractional digits among the numeric example targets.
int infer_target_precision(std::span<const ExamplePair> examples);

/// `%.12g` text, parenthesized when negative so it can sit after an operator.
std::string render_constant(double value);

/// Program computing the fitted formula on parse_num(x), rounded half away
/// from zero to `decimals`.
TransformProgram emit_numeric_program(const FitResult& fit, int decimals);

struct NumericFitOutcome {
  FitResult best;
  std::vector<FamilyAttempt> attempts;
  int decimals = 0;
  TransformProgram program;
  std::vector<std::string> warnings;  // dropped non-numeric examples
};

/// Full numeric path over example pairs. The simplest family whose program
/// reproduces every rounded example target is preferred; otherwise select_best. Throws AllFitsFailed (or
/// InsufficientPoints when no pair is numeric).
NumericFitOutcome fit_examples(std::span<const ExamplePair> examples, const LmOptions<double>& opts = {});

}  // namespace xform::fit
