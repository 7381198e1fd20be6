#pragma once

#include <vector>

#include "siggm/model_core.hpp"

namespace siggm::wglasso {

/// Symmetric, nonnegative, finite matrix of per-entry L1 weights. The penalty is
/// the full-matrix sum  sum_{j,k} W_jk |omega_jk|, so each off-diagonal pair is
/// charged 2 W_jk |omega_jk|.
class PenaltyWeights {
 public:
  explicit PenaltyWeights(Matrix w);

  /// Off-diagonal entries `offdiag`, diagonal entries `diag`.
  static PenaltyWeights uniform(int p, double offdiag, double diag);

  const Matrix& matrix() const { return w_; }
  int dim() const { return static_cast<int>(w_.rows()); }

 private:
  Matrix w_;
};

enum class Algorithm { coordinate_descent, quadratic_approximation };

struct SolverOptions {
  /// Stationarity tolerance: max-norm of the minimum-norm subgradient.
  double tol = 1e-6;
  int max_iter = 500;
  Algorithm algorithm = Algorithm::quadratic_approximation;
};

struct SolveReport {
  int iterations = 0;
  bool converged = false;
  double objective = 0;
  double subgradient = 0;
  /// Objective after each accepted sweep; starts with the objective of the starting point.
  std::vector<double> objective_trace;
};

struct Solution {
  PrecisionEstimate omega;
  SolveReport report;
};

/// -log|Omega| + tr(S Omega) + sum W|Omega|; +infinity outside the PD cone.
double penalized_objective(const Matrix& s, const Matrix& w, const Matrix& omega);

/// Max-norm of the minimum-norm element of the subdifferential at `omega`.
/// `sigma` must be omega^{-1}.
double subgradient_norm(const Matrix& s, const Matrix& w, const Matrix& omega, const Matrix& sigma);

/// Minimizes the weighted graphical-lasso objective over PD matrices.
/// The default algorithm is a second-order quadratic-approximation method with
/// coordinate-descent Newton directions and an Armijo line search that halves the
/// step until the iterate stays positive definite.
Solution solve(const SampleCovariance& s, const PenaltyWeights& w, const SolverOptions& opts = {},
               const PrecisionEstimate* warm_start = nullptr);

/// Slow block coordinate descent (row-wise lasso sweeps on the covariance, explicit
/// inversion each sweep). Intended as an oracle; limited to p <= 30.
PrecisionEstimate solve_reference(const SampleCovariance& s, const PenaltyWeights& w, double tol = 1e-10);

/// Block coordinate descent without the size cap; backs Algorithm::coordinate_descent.
Solution solve_block_cd(const SampleCovariance& s, const PenaltyWeights& w, double tol, int max_sweeps);

}  // namespace siggm::wglasso
