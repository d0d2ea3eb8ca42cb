#include "xform/fit/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>

#include "xform/table/numeric_text.hpp"

namespace xform::fit {

double mean_squared_error(std::span<const Point> points, ModelFamily family, const Params& params) {
  const FamilyInfo& info = family_info(family);
  double sum = 0;
  for (const auto& [x, t] : points) {
    const double e = info.value(params, x) - t;
    sum += e * e;
  }
  return points.empty() ? 0.0 : sum / static_cast<double>(points.size());
}

FitResult fit_family(std::span<const Point> points, ModelFamily family, const LmOptions<double>& opts) {
  const FamilyInfo& info = family_info(family);
  if (points.size() < static_cast<std::size_t>(info.arity)) {
    throw Error(ErrorCode::InsufficientPoints, std::string(info.name) + " needs at least " +
                                                   std::to_string(info.arity) + " points, got " +
                                                   std::to_string(points.size()));
  }
  for (const auto& [x, t] : points) {
    if (!std::isfinite(x) || !std::isfinite(t)) throw Error(ErrorCode::DomainError, "non-finite data point");
  }

  const auto n = static_cast<Eigen::Index>(points.size());
  const int k = info.arity;
  auto unpack = [k](const Eigen::VectorXd& theta) {
    Params p{0, 0, 0};
    for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = theta(i);
    return p;
  };
  auto residual = [&](const Eigen::VectorXd& theta) {
    const Params p = unpack(theta);
    Eigen::VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& pt = points[static_cast<std::size_t>(i)];
      r(i) = info.value(p, pt.first) - pt.second;
    }
    return r;
  };
  auto jacobian = [&](const Eigen::VectorXd& theta) {
    const Params p = unpack(theta);
    Eigen::MatrixXd J(n, k);
    double g[3];
    for (Eigen::Index i = 0; i < n; ++i) {
      info.gradient(p, points[static_cast<std::size_t>(i)].first, g);
      for (int j = 0; j < k; ++j) J(i, j) = g[j];
    }
    return J;
  };

  const Params seed = info.initial(points);
  Eigen::VectorXd init(k);
  for (int i = 0; i < k; ++i) init(i) = seed[static_cast<std::size_t>(i)];

  LmResult<double> lm;
  try {
    lm = levenberg_marquardt<double>(residual, jacobian, init, opts);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::NonFiniteResidual && family != ModelFamily::Linear && family != ModelFamily::Polynomial2) {
      throw Error(ErrorCode::DomainError, std::string(info.name) + ": " + e.what());
    }
    throw;
  }

  FitResult out;
  out.family = family;
  out.params = unpack(lm.params);
  out.iterations = lm.iterations;
  out.converged = lm.converged;
  out.mse = mean_squared_error(points, family, out.params);
  if (!std::isfinite(out.mse) || std::any_of(out.params.begin(), out.params.end(), [](double v) { return !std::isfinite(v); })) {
    throw Error(ErrorCode::DomainError, std::string(info.name) + ": fit left the finite domain");
  }
  if (family == ModelFamily::Rational) {
    for (const auto& pt : points) {
      if (std::fabs(pt.first + out.params[2]) < 1e-9 * (1 + std::fabs(pt.first))) {
        throw Error(ErrorCode::DomainError, "rational: pole at a data point");
      }
    }
  }
  return out;
}

FitResult select_best(std::span<const FitResult> fits) {
  if (fits.empty()) throw Error(ErrorCode::AllFitsFailed, "no family produced a fit");
  double lowest = fits[0].mse;
  for (const auto& f : fits) lowest = std::min(lowest, f.mse);
  // Exact fits land at rounding noise, so the relative tolerance gets an absolute floor.
  const FitResult* best = nullptr;
  for (const auto& f : fits) {
    if (f.mse - lowest > std::max(1e-9 * f.mse, 1e-20)) continue;
    if (best == nullptr || family_info(f.family).simplicity < family_info(best->family).simplicity) best = &f;
  }
  return *best;
}

std::vector<FamilyAttempt> fit_all(std::span<const Point> points, const LmOptions<double>& opts) {
  std::vector<FamilyAttempt> out;
  for (const auto& info : model_families()) {
    try {
      out.push_back({info.family, fit_family(points, info.family, opts)});
    } catch (const Error& e) {
      out.push_back({info.family, e});
    }
  }
  return out;
}

int infer_target_precision(std::span<const ExamplePair> examples) {
  int best = 0;
  for (const auto& p : examples) {
    if (p.target.is_numeric()) best = std::max(best, decimal_places(p.target.raw()));
  }
  return best;
}

std::string render_constant(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value == 0.0 ? 0.0 : value);
  std::string s(buf);
  // Keep it a real literal so the language sees a real, not an int.
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  if (s.find('e') != std::string::npos && s.find('.') == std::string::npos) {
    s.insert(s.find('e'), ".0");
  }
  return value < 0 ? "(" + s + ")" : s;
}

TransformProgram emit_numeric_program(const FitResult& fit, int decimals) {
  const FamilyInfo& info = family_info(fit.family);
  const std::array<std::string, 3> k = {render_constant(fit.params[0]), render_constant(fit.params[1]),
                                        render_constant(fit.params[2])};
  const std::string source = "transform(x) {\n  let v = parse_num(x)\n  round(" + info.formula(k) + ", " +
                             std::to_string(decimals) + ")\n}\n";
  return parse_program(source, ProgramOrigin::NumericFit);
}

namespace {

bool reproduces(const TransformProgram& program, std::span<const ExamplePair> examples, int decimals) {
  for (const auto& p : examples) {
    try {
      const auto got = evaluate(program, p.source).numeric();
      if (!got || round_half_away(*got, decimals) != round_half_away(*p.target.numeric(), decimals)) return false;
    } catch (const Error&) {
      return false;
    }
  }
  return true;
}

}  // namespace

NumericFitOutcome fit_examples(std::span<const ExamplePair> examples, const LmOptions<double>& opts) {
  NumericFitOutcome out;
  std::vector<Point> points;
  std::vector<ExamplePair> kept;
  for (const auto& p : examples) {
    if (p.source.is_numeric() && p.target.is_numeric()) {
      points.emplace_back(*p.source.numeric(), *p.target.numeric());
      kept.push_back(p);
    } else {
      out.warnings.push_back("dropped non-numeric example (\"" + p.source.raw() + "\" -> \"" + p.target.raw() + "\")");
    }
  }
  if (points.empty()) throw Error(ErrorCode::InsufficientPoints, "no numeric example pairs to fit");

  out.attempts = fit_all(points, opts);
  std::vector<FitResult> ok;
  for (const auto& a : out.attempts) {
    if (const auto* r = std::get_if<FitResult>(&a.outcome)) ok.push_back(*r);
  }
  if (ok.empty()) throw Error(ErrorCode::AllFitsFailed, "every model family failed on " + std::to_string(points.size()) + " points");
  out.decimals = infer_target_precision(kept);
  // Extra parameters only help below the targets' own rounding; when several
  // fits already reproduce every rounded target, the simplest one is kept.
  std::optional<FitResult> exact;
  for (const auto& f : ok) {
    if (exact && family_info(exact->family).simplicity <= family_info(f.family).simplicity) continue;
    if (reproduces(emit_numeric_program(f, out.decimals), kept, out.decimals)) exact = f;
  }
  out.best = exact ? *exact : select_best(ok);
  out.program = emit_numeric_program(out.best, out.decimals);
  return out;
}

}  // namespace xform::fit
