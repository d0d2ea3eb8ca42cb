#pragma once

#include <cmath>
#include <Eigen/Dense>

#include "xform/error.hpp"

namespace xform::fit {

template <typename Scalar>
struct LmOptions {
  int max_iter = 200;
  Scalar lambda0 = Scalar(1e-3);
  Scalar lambda_up = Scalar(10);
  Scalar lambda_down = Scalar(0.1);
  Scalar tol = Scalar(1e-12);
  int max_damping_retries = 12;
};

template <typename Scalar>
struct LmResult {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> params;
  bool converged = false;
  int iterations = 0;
  Scalar cost = 0;  // sum of squared residuals
};

/// Damped Gauss-Newton with Marquardt scaling:
///   (JᵀJ + λ·diag(JᵀJ)) δ = −Jᵀr
/// `residual(θ)` returns r as an Eigen vector and `jacobian(θ)` the matrix
/// ∂r/∂θ. A trial step whose residual is not finite counts as rejected.
/// Throws NonFiniteResidual when r(init) or a Jacobian is not finite and
/// SingularNormalMatrix when damping cannot make the system solvable.
template <typename Scalar, typename ResidualFn, typename JacobianFn>
LmResult<Scalar> levenberg_marquardt(ResidualFn&& residual, JacobianFn&& jacobian,
                                     const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& init,
                                     const LmOptions<Scalar>& opts = {}) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  LmResult<Scalar> out;
  out.params = init;
  if (!init.allFinite()) throw Error(ErrorCode::NonFiniteResidual, "initial parameters are not finite");

  Vec r = residual(out.params);
  if (!r.allFinite()) throw Error(ErrorCode::NonFiniteResidual, "residual is not finite at the initial parameters");
  Scalar cost = r.squaredNorm();
  out.cost = cost;
  if (cost == Scalar(0)) {
    out.converged = true;
    return out;
  }

  Scalar lambda = opts.lambda0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    out.iterations = iter;
    const Mat J = jacobian(out.params);
    if (!J.allFinite()) throw Error(ErrorCode::NonFiniteResidual, "jacobian is not finite");
    const Mat A = J.transpose() * J;
    const Vec g = J.transpose() * r;

    Vec delta;
    bool solved = false;
    for (int attempt = 0; attempt <= opts.max_damping_retries; ++attempt) {
      Mat M = A;
      M.diagonal() += lambda * A.diagonal();
      Eigen::LDLT<Mat> ldlt(M);
      if (ldlt.info() == Eigen::Success && (ldlt.vectorD().array() > Scalar(0)).all()) {
        delta = ldlt.solve(-g);
        if (delta.allFinite()) {
          solved = true;
          break;
        }
      }
      lambda *= opts.lambda_up;
    }
    if (!solved) throw Error(ErrorCode::SingularNormalMatrix, "normal matrix stays singular under damping");

    const Scalar step = delta.norm();
    const Vec trial = out.params + delta;
    const Vec r_trial = residual(trial);
    const Scalar cost_trial = r_trial.allFinite() ? r_trial.squaredNorm() : Scalar(INFINITY);

    if (cost_trial < cost) {
      const Scalar drop = cost - cost_trial;
      out.params = trial;
      r = r_trial;
      cost = cost_trial;
      lambda *= opts.lambda_down;
      if (cost == Scalar(0) || drop < opts.tol * cost || step < opts.tol) {
        out.converged = true;
        break;
      }
    } else {
      lambda *= opts.lambda_up;
      // No progress possible at this scale: the minimum is already resolved.
      if (step < opts.tol * (Scalar(1) + out.params.norm())) {
        out.converged = true;
        break;
      }
    }
  }
  out.cost = cost;
  return out;
}

}  // namespace xform::fit
