// Covariance-side block coordinate descent (row-wise lasso sweeps). Kept deliberately
// plain: it is the cross-check for the second-order solver.

#include <algorithm>
#include <cmath>

#include "siggm/wglasso.hpp"

namespace siggm::wglasso {

namespace {

double soft(double z, double r) {
  if (z > r) return z - r;
  if (z < -r) return z + r;
  return 0.0;
}

std::vector<Eigen::Index> all_but(Eigen::Index p, Eigen::Index skip) {
  std::vector<Eigen::Index> idx;
  idx.reserve(static_cast<std::size_t>(p - 1));
  for (Eigen::Index i = 0; i < p; ++i)
    if (i != skip) idx.push_back(i);
  return idx;
}

}  // namespace

Solution solve_block_cd(const SampleCovariance& cov, const PenaltyWeights& weights, double tol, int max_sweeps) {
  const Matrix& s = cov.matrix();
  const Matrix& wt = weights.matrix();
  const Eigen::Index p = s.rows();
  if (wt.rows() != p) throw InputError("penalty weights and covariance differ in dimension");

  // covariance estimate; its diagonal is fixed at S_jj + W_jj
  Matrix cov_est = s;
  cov_est.diagonal() += wt.diagonal();
  if ((cov_est.diagonal().array() <= 0.0).any()) {
    throw InputError("zero diagonal in S + diag(W): the objective is unbounded below");
  }
  Matrix beta = Matrix::Zero(p - 1, p);  // column j holds the lasso coefficients for node j
  Matrix omega = cov_est.inverse();
  Matrix omega_prev = omega;
  SolveReport report;

  const double inner_tol = std::min(tol * 1e-2, 1e-12);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    for (Eigen::Index j = 0; j < p; ++j) {
      const auto idx = all_but(p, j);
      const Matrix w11 = cov_est(idx, idx);
      Vector s12(p - 1), rho(p - 1);
      for (Eigen::Index a = 0; a < p - 1; ++a) {
        s12[a] = s(idx[static_cast<std::size_t>(a)], j);
        rho[a] = wt(idx[static_cast<std::size_t>(a)], j);
      }
      Vector b = beta.col(j);
      for (int it = 0; it < 100000; ++it) {
        double change = 0.0;
        for (Eigen::Index a = 0; a < p - 1; ++a) {
          const double r = s12[a] - (w11.row(a).dot(b) - w11(a, a) * b[a]);
          const double nb = soft(r, rho[a]) / w11(a, a);
          change = std::max(change, std::abs(nb - b[a]));
          b[a] = nb;
        }
        if (change < inner_tol) break;
      }
      beta.col(j) = b;
      const Vector w12 = w11 * b;
      for (Eigen::Index a = 0; a < p - 1; ++a) {
        cov_est(idx[static_cast<std::size_t>(a)], j) = w12[a];
        cov_est(j, idx[static_cast<std::size_t>(a)]) = w12[a];
      }
    }
    omega = cov_est.inverse();
    report.iterations = sweep + 1;
    const double change = (omega - omega_prev).cwiseAbs().maxCoeff();
    omega_prev = omega;
    report.objective_trace.push_back(penalized_objective(s, wt, 0.5 * (omega + omega.transpose())));
    if (change < tol) {
      report.converged = true;
      break;
    }
  }

  // Rebuild the precision matrix from the lasso coefficients so that zeros are exact.
  Matrix result = Matrix::Zero(p, p);
  for (Eigen::Index j = 0; j < p; ++j) {
    const auto idx = all_but(p, j);
    Vector w12(p - 1);
    for (Eigen::Index a = 0; a < p - 1; ++a) w12[a] = cov_est(idx[static_cast<std::size_t>(a)], j);
    const double wjj = 1.0 / (cov_est(j, j) - w12.dot(beta.col(j)));
    result(j, j) = wjj;
    for (Eigen::Index a = 0; a < p - 1; ++a) result(idx[static_cast<std::size_t>(a)], j) = -beta(a, j) * wjj;
  }
  // the two half-estimates of each pair agree at convergence; keep zeros only if both vanish
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = j + 1; i < p; ++i) {
      const double avg = (result(i, j) == 0.0 && result(j, i) == 0.0) ? 0.0 : 0.5 * (result(i, j) + result(j, i));
      result(i, j) = avg;
      result(j, i) = avg;
    }
  }
  if (!is_positive_definite(result)) result = 0.5 * (omega + omega.transpose());

  Matrix sigma = result.inverse();
  report.subgradient = subgradient_norm(s, wt, result, sigma);
  report.objective = penalized_objective(s, wt, result);
  return Solution{PrecisionEstimate(std::move(result)), std::move(report)};
}

PrecisionEstimate solve_reference(const SampleCovariance& s, const PenaltyWeights& w, double tol) {
  if (s.dim() > 30) throw InputError("solve_reference is limited to p <= 30");
  if (!(tol > 0)) throw InputError("solve_reference needs tol > 0");
  return solve_block_cd(s, w, tol, 100000).omega;
}

}  // namespace siggm::wglasso
