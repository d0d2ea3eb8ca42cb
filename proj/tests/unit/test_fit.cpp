#include <doctest.h>

#include <cmath>
#include <random>

#include "helpers.hpp"
#include "xform/fit/fitter.hpp"
#include "xform/lang/program.hpp"

using namespace xform;
using namespace xform::fit;

namespace {

// Ordinary least squares for a line, from the normal equations by hand.
std::pair<double, double> ols_line(const std::vector<Point>& pts) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : pts) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return {slope, (sy - slope * sx) / n};
}

std::vector<Point> sample(ModelFamily f, const Params& p, int n = 8) {
  std::vector<Point> pts;
  for (int k = 0; k < n; ++k) {
    const double x = 0.4 + 0.2 * k;
    pts.emplace_back(x, family_info(f).value(p, x));
  }
  return pts;
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1e-300, std::abs(want)); }

}  // namespace

TEST_SUITE("fit") {

TEST_CASE("pounds to kilograms matches the closed form regression") {
  const std::vector<Point> pts{{2, 0.9}, {51.5, 23.4}, {73, 33.1}};
  const auto [a, b] = ols_line(pts);
  const auto r = fit_family(pts, ModelFamily::Linear);
  CHECK(rel(r.params[0], a) < 1e-9);
  CHECK(std::abs(r.params[1] - b) < 1e-9);
  CHECK(r.params[0] == doctest::Approx(0.4537).epsilon(1e-3));
  CHECK(r.params[1] == doctest::Approx(0.0023).epsilon(0.05));
  double mse = 0;
  for (const auto& [x, y] : pts) mse += (a * x + b - y) * (a * x + b - y) / 3;
  CHECK(r.mse == doctest::Approx(mse).epsilon(1e-9));
  CHECK(r.mse < 1e-3);
}

TEST_CASE("exact small fits") {
  const auto lin = fit_family(std::vector<Point>{{0, 1}, {1, 3}, {2, 5}}, ModelFamily::Linear);
  CHECK(lin.params[0] == doctest::Approx(2.0));
  CHECK(lin.params[1] == doctest::Approx(1.0));
  CHECK(lin.mse <= 1e-12);
  const auto quad = fit_family(std::vector<Point>{{0, 0}, {1, 1}, {2, 4}, {3, 9}}, ModelFamily::Polynomial2);
  CHECK(quad.params[0] == doctest::Approx(1.0));
  CHECK(std::abs(quad.params[1]) < 1e-9);
  CHECK(std::abs(quad.params[2]) < 1e-9);
}

TEST_CASE("exponential recovers from the log-linear seed") {
  std::vector<Point> pts;
  for (int x = 0; x <= 3; ++x) pts.emplace_back(x, 2 * std::exp(0.5 * x));
  const auto r = fit_family(pts, ModelFamily::Exponential);
  CHECK(rel(r.params[0], 2) < 1e-6);
  CHECK(rel(r.params[1], 0.5) < 1e-6);
  const auto best = select_best([&] {
    std::vector<FitResult> ok;
    for (auto& a : fit_all(pts)) {
      if (auto* f = std::get_if<FitResult>(&a.outcome)) ok.push_back(*f);
    }
    return ok;
  }());
  CHECK(best.family == ModelFamily::Exponential);
}

TEST_CASE("levenberg marquardt on a line from zero") {
  const Eigen::VectorXd xs = Eigen::VectorXd::LinSpaced(6, 0, 5);
  const Eigen::VectorXd ys = 3.5 * xs.array() - 2.0;
  auto residual = [&](const Eigen::VectorXd& t) -> Eigen::VectorXd { return (t[0] * xs.array() + t[1]).matrix() - ys; };
  auto jacobian = [&](const Eigen::VectorXd&) -> Eigen::MatrixXd {
    Eigen::MatrixXd j(xs.size(), 2);
    j.col(0) = xs;
    j.col(1).setOnes();
    return j;
  };
  const auto r = levenberg_marquardt<double>(residual, jacobian, Eigen::VectorXd::Zero(2));
  CHECK(r.converged);
  CHECK(r.iterations <= 5);
  CHECK(std::abs(r.params[0] - 3.5) < 1e-10);
  CHECK(std::abs(r.params[1] + 2.0) < 1e-10);

  const Eigen::VectorXd exact = (Eigen::VectorXd(2) << 3.5, -2.0).finished();
  const auto at_min = levenberg_marquardt<double>(residual, jacobian, exact);
  CHECK(at_min.converged);
  CHECK(at_min.iterations == 0);
  CHECK(at_min.params == exact);
}

TEST_CASE("levenberg marquardt in single precision") {
  using V = Eigen::VectorXf;
  const V xs = V::LinSpaced(5, 1, 5);
  auto residual = [&](const V& t) -> V { return (t[0] * xs.array().square()).matrix() - 2.0f * xs.array().square().matrix(); };
  auto jacobian = [&](const V&) -> Eigen::MatrixXf { return xs.array().square().matrix(); };
  const auto r = levenberg_marquardt<float>(residual, jacobian, V::Zero(1));
  CHECK(r.params[0] == doctest::Approx(2.0f).epsilon(1e-5));
}

TEST_CASE("non finite start is a typed error") {
  auto residual = [](const Eigen::VectorXd& t) -> Eigen::VectorXd { return Eigen::VectorXd::Constant(2, std::log(t[0])); };
  auto jacobian = [](const Eigen::VectorXd& t) -> Eigen::MatrixXd { return Eigen::MatrixXd::Constant(2, 1, 1 / t[0]); };
  const Eigen::VectorXd init = Eigen::VectorXd::Constant(1, -1.0);
  CHECK(testing::error_of([&] { levenberg_marquardt<double>(residual, jacobian, init); }) ==
        ErrorCode::NonFiniteResidual);
}

TEST_CASE("analytic gradients agree with central differences") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> param(0.1, 10.0);
  std::uniform_real_distribution<double> at(0.2, 2.0);
  for (const auto& info : model_families()) {
    for (int draw = 0; draw < 100; ++draw) {
      Params p{param(rng), param(rng), param(rng)};
      const double x = at(rng);
      double g[3] = {0, 0, 0};
      info.gradient(p, x, g);
      for (int j = 0; j < info.arity; ++j) {
        const double h = 1e-6 * std::max(1.0, std::abs(p[j]));
        Params up = p;
        Params dn = p;
        up[j] += h;
        dn[j] -= h;
        const double fd = (info.value(up, x) - info.value(dn, x)) / (2 * h);
        CHECK_MESSAGE(std::abs(fd - g[j]) <= 1e-5 * std::max(1.0, std::abs(fd)), info.name, " param ", j);
      }
    }
  }
}

TEST_CASE("each family is recovered from its own noise-free samples") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> param(0.1, 10.0);
  for (const auto& info : model_families()) {
    for (int i = 0; i < 25; ++i) {
      const Params p{param(rng), param(rng), info.arity == 3 ? param(rng) : 0.0};
      const auto pts = sample(info.family, p);
      const auto r = fit_family(pts, info.family);
      for (int j = 0; j < info.arity; ++j) CHECK_MESSAGE(rel(r.params[j], p[j]) < 1e-6, info.name);
      CHECK(r.mse <= 1e-12);
    }
  }
}

TEST_CASE("selection prefers the simpler family on ties") {
  const auto pts = sample(ModelFamily::Linear, {2, 1, 0});
  std::vector<FitResult> ok;
  for (auto& a : fit_all(pts)) {
    if (auto* f = std::get_if<FitResult>(&a.outcome)) ok.push_back(*f);
  }
  CHECK(select_best(ok).family == ModelFamily::Linear);
  std::reverse(ok.begin(), ok.end());
  CHECK(select_best(ok).family == ModelFamily::Linear);

  FitResult only;
  only.family = ModelFamily::Rational;
  only.mse = 5;
  CHECK(select_best(std::vector<FitResult>{only}).family == ModelFamily::Rational);
  CHECK(testing::error_of([] { select_best(std::vector<FitResult>{}); }) == ErrorCode::AllFitsFailed);

  FitResult lin;
  lin.family = ModelFamily::Linear;
  lin.mse = 1.0;
  FitResult quad;
  quad.family = ModelFamily::Polynomial2;
  quad.mse = 0.5;
  CHECK(select_best(std::vector<FitResult>{lin, quad}).family == ModelFamily::Polynomial2);
}

TEST_CASE("selection is order independent") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mse(0, 1);
  for (int round = 0; round < 200; ++round) {
    std::vector<FitResult> fits;
    for (const auto& info : model_families()) {
      FitResult f;
      f.family = info.family;
      f.mse = round % 3 == 0 ? 0.25 : mse(rng);
      fits.push_back(f);
    }
    const auto best = select_best(fits);
    for (const auto& f : fits) CHECK(best.mse <= f.mse);
    const auto first = best.family;
    std::shuffle(fits.begin(), fits.end(), rng);
    CHECK(select_best(fits).family == first);
  }
}

TEST_CASE("input validation") {
  CHECK(testing::error_of([] { fit_family(std::vector<Point>{{1, 2}}, ModelFamily::Linear); }) ==
        ErrorCode::InsufficientPoints);
  CHECK(testing::error_of([] { fit_family(std::vector<Point>{{1, 2}, {2, 3}}, ModelFamily::Polynomial2); }) ==
        ErrorCode::InsufficientPoints);
  // Alternating signs have no exponential model; the fit fails or stays poor but finite.
  try {
    const auto r = fit_family(std::vector<Point>{{0, 1}, {1, -2}, {2, 4}, {3, -8}}, ModelFamily::Exponential);
    CHECK(std::isfinite(r.mse));
    CHECK(r.mse > 1);
  } catch (const Error& e) {
    CHECK((e.code() == ErrorCode::DomainError || e.code() == ErrorCode::SingularNormalMatrix));
  }
  const auto attempts = fit_all(std::vector<Point>{{1, 2}, {2, 3}});
  CHECK(attempts.size() == model_families().size());
  CHECK(std::holds_alternative<FitResult>(attempts[0].outcome));
  CHECK(std::holds_alternative<Error>(attempts[1].outcome));
}

TEST_CASE("target precision") {
  CHECK(infer_target_precision(std::vector<ExamplePair>{{"2", "0.9"}, {"51.5", "23.4"}}) == 1);
  CHECK(infer_target_precision(std::vector<ExamplePair>{{"1", "3"}, {"2", "7"}}) == 0);
  CHECK(infer_target_precision(std::vector<ExamplePair>{{"1", "1.25"}, {"2", "3.1"}}) == 2);
}

TEST_CASE("constants render as real literals") {
  CHECK(render_constant(0.453) == "0.453");
  CHECK(render_constant(2) == "2.0");
  CHECK(render_constant(-1.5) == "(-1.5)");
}

TEST_CASE("emitted programs evaluate the fitted formula") {
  const auto fig1 = fit_family(std::vector<Point>{{2, 0.9}, {51.5, 23.4}, {73, 33.1}}, ModelFamily::Linear);
  const auto prog = emit_numeric_program(fig1, 1);
  CHECK(prog.origin == ProgramOrigin::NumericFit);
  CHECK_FALSE(check_program(prog).has_errors());
  CHECK(evaluate(prog, CellValue("73")).raw() == "33.1");
  CHECK(evaluate(prog, CellValue("2")).raw() == "0.9");
  CHECK(evaluate(prog, CellValue("51.5")).raw() == "23.4");

  FitResult identity;
  identity.params = {1, 0, 0};
  CHECK(evaluate(emit_numeric_program(identity, 0), CellValue("5")).raw() == "5");

  FitResult coarse;
  coarse.params = {0.453, 0, 0};
  CHECK(evaluate(emit_numeric_program(coarse, 1), CellValue("2")).raw() == "0.9");

  for (const auto& info : model_families()) {
    FitResult f;
    f.family = info.family;
    f.params = {1.5, -0.25, 2.0};
    const auto p = emit_numeric_program(f, 3);
    CHECK_FALSE(check_program(p).has_errors());
    const double want = round_half_away(info.value(f.params, 1.2), 3);
    CHECK(parse_numeric(evaluate(p, CellValue("1.2")).raw()) == doctest::Approx(want));
  }
}

TEST_CASE("full numeric path over examples") {
  const std::vector<ExamplePair> ex{{"2", "0.9"}, {"51.5", "23.4"}, {"73", "33.1"}, {"n/a", "1"}};
  const auto out = fit_examples(ex);
  CHECK(out.decimals == 1);
  CHECK(out.best.family == ModelFamily::Linear);
  CHECK(out.warnings.size() == 1);
  CHECK(evaluate(out.program, CellValue("73")).raw() == "33.1");

  // Five rounded weights: a quadratic or rational fit has lower MSE, but the
  // line already reproduces every rounded target.
  const std::vector<ExamplePair> five{{"100", "45.4"}, {"20", "9.1"}, {"73", "33.1"}, {"2", "0.9"}, {"125", "56.7"}};
  const auto lin = fit_examples(five);
  CHECK(lin.best.family == ModelFamily::Linear);
  CHECK(std::get<FitResult>(lin.attempts[1].outcome).mse < lin.best.mse);
  CHECK(testing::error_of([] { fit_examples(std::vector<ExamplePair>{{"a", "b"}}); }) ==
        ErrorCode::InsufficientPoints);
}

}
