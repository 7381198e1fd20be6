#include "siggm/wglasso.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace siggm::wglasso {

namespace {

constexpr double kArmijo = 1e-3;
constexpr int kMaxLineSearch = 60;

double soft_threshold(double z, double r) {
  if (z > r) return z - r;
  if (z < -r) return z + r;
  return 0.0;
}

double weighted_l1(const Matrix& w, const Matrix& omega) {
  return w.cwiseProduct(omega.cwiseAbs()).sum();
}

struct Factorized {
  bool ok = false;
  double log_det = 0;
  Eigen::LLT<Matrix> llt;
};

Factorized factorize(const Matrix& omega) {
  Factorized f;
  f.llt.compute(omega);
  if (f.llt.info() != Eigen::Success) return f;
  const auto d = f.llt.matrixLLT().diagonal();
  if (!(d.array() > 0.0).all()) return f;
  f.log_det = 2.0 * d.array().log().sum();
  f.ok = std::isfinite(f.log_det);
  return f;
}

Matrix initial_point(const Matrix& s, const Matrix& w) {
  const Eigen::Index p = s.rows();
  Matrix omega = Matrix::Zero(p, p);
  for (Eigen::Index i = 0; i < p; ++i) {
    const double d = s(i, i) + w(i, i);
    if (!(d > 0)) {
      throw InputError("zero diagonal in S + diag(W): the objective is unbounded below");
    }
    omega(i, i) = 1.0 / d;
  }
  return omega;
}

}  // namespace

PenaltyWeights::PenaltyWeights(Matrix w) : w_(std::move(w)) {
  if (w_.rows() != w_.cols()) throw InputError("penalty weights must be square");
  if (!w_.allFinite()) throw InputError("penalty weights must be finite");
  if ((w_.array() < 0.0).any()) throw InputError("penalty weights must be nonnegative");
  const double scale = std::max(1.0, w_.cwiseAbs().maxCoeff());
  if ((w_ - w_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InputError("penalty weights must be symmetric");
  }
  w_ = 0.5 * (w_ + w_.transpose()).eval();
}

PenaltyWeights PenaltyWeights::uniform(int p, double offdiag, double diag) {
  Matrix w = Matrix::Constant(p, p, offdiag);
  w.diagonal().setConstant(diag);
  return PenaltyWeights(std::move(w));
}

double penalized_objective(const Matrix& s, const Matrix& w, const Matrix& omega) {
  const Factorized f = factorize(omega);
  if (!f.ok) return std::numeric_limits<double>::infinity();
  return -f.log_det + s.cwiseProduct(omega).sum() + weighted_l1(w, omega);
}

double subgradient_norm(const Matrix& s, const Matrix& w, const Matrix& omega, const Matrix& sigma) {
  const Eigen::Index p = s.rows();
  double worst = 0.0;
  for (Eigen::Index j = 0; j < p; ++j) {
    for (Eigen::Index i = 0; i <= j; ++i) {
      const double g = s(i, j) - sigma(i, j);
      double v;
      if (omega(i, j) > 0) {
        v = std::abs(g + w(i, j));
      } else if (omega(i, j) < 0) {
        v = std::abs(g - w(i, j));
      } else {
        v = std::max(std::abs(g) - w(i, j), 0.0);
      }
      worst = std::max(worst, v);
    }
  }
  return worst;
}

Solution solve(const SampleCovariance& cov, const PenaltyWeights& weights, const SolverOptions& opts,
               const PrecisionEstimate* warm_start) {
  if (opts.tol <= 0 || opts.max_iter < 1) throw InputError("solver options: need tol > 0 and max_iter >= 1");
  const Matrix& s = cov.matrix();
  const Matrix& w = weights.matrix();
  const Eigen::Index p = s.rows();
  if (w.rows() != p) throw InputError("penalty weights and covariance differ in dimension");
  if (warm_start != nullptr && warm_start->dim() != p) throw InputError("warm start has wrong dimension");

  if (opts.algorithm == Algorithm::coordinate_descent) {
    return solve_block_cd(cov, weights, opts.tol, opts.max_iter);
  }

  Matrix omega = warm_start != nullptr ? warm_start->matrix() : initial_point(s, w);
  Factorized fac = factorize(omega);
  if (!fac.ok) throw InputError("warm start is not positive definite");

  SolveReport report;
  double f = -fac.log_det + s.cwiseProduct(omega).sum() + weighted_l1(w, omega);
  report.objective_trace.push_back(f);

  Matrix sigma(p, p);
  Matrix d(p, p);
  Matrix u(p, p);  // u = D * Sigma
  std::vector<std::pair<Eigen::Index, Eigen::Index>> free_set;
  free_set.reserve(static_cast<std::size_t>(p * (p + 1) / 2));

  for (int iter = 0; iter < opts.max_iter; ++iter) {
    sigma = fac.llt.solve(Matrix::Identity(p, p));
    sigma = 0.5 * (sigma + sigma.transpose()).eval();

    report.subgradient = subgradient_norm(s, w, omega, sigma);
    report.iterations = iter;
    if (report.subgradient <= opts.tol) {
      report.converged = true;
      break;
    }

    free_set.clear();
    for (Eigen::Index j = 0; j < p; ++j) {
      for (Eigen::Index i = 0; i <= j; ++i) {
        const double g = s(i, j) - sigma(i, j);
        if (omega(i, j) != 0.0 || std::abs(g) > w(i, j)) free_set.emplace_back(i, j);
      }
    }

    // Newton direction: coordinate descent on the second-order model.
    d.setZero();
    u.setZero();
    const int sweeps = 5 + iter;
    double first_step = 0.0;
    for (int sweep = 0; sweep < sweeps; ++sweep) {
      double max_step = 0.0;
      for (const auto& [i, j] : free_set) {
        const double wij = sigma.col(i).dot(u.col(j));
        double a, b, c;
        if (i == j) {
          a = sigma(i, i) * sigma(i, i);
          b = s(i, i) - sigma(i, i) + wij;
        } else {
          a = sigma(i, j) * sigma(i, j) + sigma(i, i) * sigma(j, j);
          b = s(i, j) - sigma(i, j) + wij;
        }
        c = omega(i, j) + d(i, j);
        const double mu = -c + soft_threshold(c - b / a, w(i, j) / a);
        if (mu == 0.0) continue;
        max_step = std::max(max_step, std::abs(mu));
        d(i, j) += mu;
        u.row(i) += mu * sigma.row(j);
        if (i != j) {
          d(j, i) += mu;
          u.row(j) += mu * sigma.row(i);
        }
      }
      if (sweep == 0) first_step = max_step;
      if (max_step <= 1e-3 * first_step || max_step < 1e-14) break;
    }

    // Directional derivative of the smooth part plus change of the L1 part at unit step.
    const double delta = (s - sigma).cwiseProduct(d).sum() + weighted_l1(w, omega + d) - weighted_l1(w, omega);
    if (!(delta < 0.0)) {
      // No descent direction left: stationary within floating-point resolution.
      report.converged = report.subgradient <= 10 * opts.tol;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    Matrix trial(p, p);
    for (int ls = 0; ls < kMaxLineSearch; ++ls, step *= 0.5) {
      trial = omega + step * d;
      Factorized tf = factorize(trial);
      if (!tf.ok) continue;
      const double f_trial = -tf.log_det + s.cwiseProduct(trial).sum() + weighted_l1(w, trial);
      if (f_trial <= f + kArmijo * step * delta) {
        omega.swap(trial);
        fac = std::move(tf);
        f = f_trial;
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    report.objective_trace.push_back(f);
    report.iterations = iter + 1;
  }

  if (!report.converged) {
    sigma = fac.llt.solve(Matrix::Identity(p, p));
    report.subgradient = subgradient_norm(s, w, omega, sigma);
    report.converged = report.subgradient <= opts.tol;
  }
  report.objective = f;
  return Solution{PrecisionEstimate(std::move(omega)), std::move(report)};
}

}  // namespace siggm::wglasso
