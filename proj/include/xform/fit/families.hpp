#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace xform::fit {

enum class ModelFamily { Linear, Polynomial2, Exponential, Rational };

using Point = std::pair<double, double>;
using Params = std::array<double, 3>;

/// One registered curve family. Adding a family means adding one entry to
/// the registry; the fitter and program emitter work from these fields.
struct FamilyInfo {
  ModelFamily family;
  std::string_view name;
  int arity;
  int simplicity;  // lower wins ties in model selection
  double (*value)(const Params& p, double x);
  void (*gradient)(const Params& p, double x, double* out);  // ∂f/∂p, `arity` entries
  Params (*initial)(std::span<const Point> points);
  /// Program body over the numeric variable `v`, with constants already rendered.
  std::string (*formula)(const std::array<std::string, 3>& constants);
};

std::span<const FamilyInfo> model_families() noexcept;
const FamilyInfo& family_info(ModelFamily f);
std::string_view to_string(ModelFamily f) noexcept;
std::optional<ModelFamily> parse_model_family(std::string_view name);

/// Least squares solution of the design system used by the seeds.
Eigen::VectorXd least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs);

}  // namespace xform::fit
