#include "xform/fit/families.hpp"

#include <cmath>
#include <string>

#include "xform/error.hpp"

namespace xform::fit {

Eigen::VectorXd least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs) {
  return design.colPivHouseholderQr().solve(rhs);
}

namespace {

Params seed_polynomial(std::span<const Point> pts, int degree) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), degree + 1);
  Eigen::VectorXd t(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    for (int k = 0; k <= degree; ++k) A(row, k) = std::pow(pts[i].first, degree - k);
    t(row) = pts[i].second;
  }
  const Eigen::VectorXd s = least_squares(A, t);
  Params p{0, 0, 0};
  for (int k = 0; k <= degree; ++k) p[static_cast<std::size_t>(k)] = s(k);
  if (!std::isfinite(p[0]) || !std::isfinite(p[1]) || !std::isfinite(p[2])) p = {1, 0, 0};
  return p;
}

double linear_value(const Params& p, double x) { return p[0] * x + p[1]; }
void linear_gradient(const Params&, double x, double* g) {
  g[0] = x;
  g[1] = 1;
}
Params linear_initial(std::span<const Point> pts) { return seed_polynomial(pts, 1); }

double poly2_value(const Params& p, double x) { return (p[0] * x + p[1]) * x + p[2]; }
void poly2_gradient(const Params&, double x, double* g) {
  g[0] = x * x;
  g[1] = x;
  g[2] = 1;
}
Params poly2_initial(std::span<const Point> pts) { return seed_polynomial(pts, 2); }

double exp_value(const Params& p, double x) { return p[0] * std::exp(p[1] * x); }
void exp_gradient(const Params& p, double x, double* g) {
  const double e = std::exp(p[1] * x);
  g[0] = e;
  g[1] = p[0] * x * e;
}

// Regress log|t| on x over points sharing one sign; all-negative data gives a negative scale.
Params exp_initial(std::span<const Point> pts) {
  for (const double sign : {1.0, -1.0}) {
    std::vector<Point> logs;
    for (const auto& [x, t] : pts) {
      if (sign * t > 0) logs.emplace_back(x, std::log(sign * t));
    }
    if (logs.size() < 2 || (sign < 0 && logs.size() != pts.size())) continue;
    const Params line = seed_polynomial(logs, 1);
    const Params p{sign * std::exp(line[1]), line[0], 0};
    if (std::isfinite(p[0]) && std::isfinite(p[1]) && p[0] != 0) return p;
  }
  return {1, 0.1, 0};
}

double rational_value(const Params& p, double x) { return (p[0] * x + p[1]) / (x + p[2]); }
void rational_gradient(const Params& p, double x, double* g) {
  const double d = x + p[2];
  g[0] = x / d;
  g[1] = 1 / d;
  g[2] = -(p[0] * x + p[1]) / (d * d);
}

bool pole_clear(std::span<const Point> pts, double c) {
  for (const auto& pt : pts) {
    if (std::fabs(pt.first + c) < 1e-6 * (1 + std::fabs(pt.first))) return false;
  }
  return true;
}

// (a x + b) / (x + c) = t  ⇔  a x + b − c t = t x, linear in (a, b, c).
Params rational_initial(std::span<const Point> pts) {
  Eigen::MatrixXd A(static_cast<Eigen::Index>(pts.size()), 3);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const auto [x, t] = pts[i];
    A(row, 0) = x;
    A(row, 1) = 1;
    A(row, 2) = -t;
    rhs(row) = t * x;
  }
  const Eigen::VectorXd s = least_squares(A, rhs);
  const Params p{s(0), s(1), s(2)};
  if (s.allFinite() && pole_clear(pts, p[2])) return p;
  for (const double c : {1.0, 2.0, 10.0}) {
    if (pole_clear(pts, c)) return {1, 0, c};
  }
  return {1, 0, 1};
}

std::string linear_formula(const std::array<std::string, 3>& k) { return k[0] + " * v + " + k[1]; }
std::string poly2_formula(const std::array<std::string, 3>& k) {
  return k[0] + " * v * v + " + k[1] + " * v + " + k[2];
}
std::string exp_formula(const std::array<std::string, 3>& k) { return k[0] + " * exp(" + k[1] + " * v)"; }
std::string rational_formula(const std::array<std::string, 3>& k) {
  return "(" + k[0] + " * v + " + k[1] + ") / (v + " + k[2] + ")";
}

const FamilyInfo kFamilies[] = {
    {ModelFamily::Linear, "linear", 2, 0, linear_value, linear_gradient, linear_initial, linear_formula},
    {ModelFamily::Polynomial2, "polynomial2", 3, 2, poly2_value, poly2_gradient, poly2_initial, poly2_formula},
    {ModelFamily::Exponential, "exponential", 2, 1, exp_value, exp_gradient, exp_initial, exp_formula},
    {ModelFamily::Rational, "rational", 3, 3, rational_value, rational_gradient, rational_initial, rational_formula},
};

}  // namespace

std::span<const FamilyInfo> model_families() noexcept { return kFamilies; }

const FamilyInfo& family_info(ModelFamily f) {
  for (const auto& info : kFamilies) {
    if (info.family == f) return info;
  }
  throw Error(ErrorCode::InvalidConfig, "unregistered model family");
}

std::string_view to_string(ModelFamily f) noexcept {
  for (const auto& info : kFamilies) {
    if (info.family == f) return info.name;
  }
  return "unknown";
}

std::optional<ModelFamily> parse_model_family(std::string_view name) {
  for (const auto& info : kFamilies) {
    if (info.name == name) return info.family;
  }
  return std::nullopt;
}

}  // namespace xform::fit
