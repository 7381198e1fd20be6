#pragma once

#include <Eigen/Dense>

#include <compare>
#include <string>
#include <vector>

#include "siggm/errors.hpp"

namespace siggm {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Unordered node pair stored with j < k.
struct Edge {
  int j = 0;
  int k = 0;
  auto operator<=>(const Edge&) const = default;
};

/// Sorted list of distinct edges over nodes 0..p-1.
using EdgeSet = std::vector<Edge>;

// ---------------------------------------------------------------------------
// Upper-triangular flattening. Pairs (j,k), j<k, are laid out row-major:
// (0,1), (0,2), ..., (0,p-1), (1,2), ...

inline std::size_t pair_count(int p) {
  return static_cast<std::size_t>(p) * static_cast<std::size_t>(p - 1) / 2;
}

inline std::size_t pair_index(int j, int k, int p) {
  // row j starts after sum_{r<j} (p-1-r) entries
  const auto jj = static_cast<std::size_t>(j);
  return jj * static_cast<std::size_t>(p) - jj * (jj + 1) / 2 + static_cast<std::size_t>(k - j - 1);
}

/// Number of nodes p for a flattened vector of length p(p-1)/2; throws if not triangular.
int nodes_for_pair_count(std::size_t m);

Vector flatten_upper(const Matrix& m);
/// Inverse of flatten_upper: symmetric matrix with zero diagonal.
Matrix unflatten_upper(const Vector& v, int p);

// ---------------------------------------------------------------------------
// Domain types

class TimeSeriesData {
 public:
  /// Rows are time points, columns are regions. Requires T >= 2, p >= 2, finite entries.
  explicit TimeSeriesData(Matrix values, std::vector<std::string> region_labels = {});

  const Matrix& values() const { return values_; }
  const std::vector<std::string>& region_labels() const { return labels_; }
  int n_time() const { return static_cast<int>(values_.rows()); }
  int n_regions() const { return static_cast<int>(values_.cols()); }

 private:
  Matrix values_;
  std::vector<std::string> labels_;
};

class SampleCovariance {
 public:
  SampleCovariance(Matrix s, int n_time);

  const Matrix& matrix() const { return s_; }
  int n_time() const { return n_time_; }
  int dim() const { return static_cast<int>(s_.rows()); }

 private:
  Matrix s_;
  int n_time_;
};

/// Structural-connectivity strengths p_jk in [0,1], symmetric, zero diagonal.
class StructuralPrior {
 public:
  explicit StructuralPrior(Matrix p);
  static StructuralPrior zeros(int p) { return StructuralPrior(Matrix::Zero(p, p)); }

  const Matrix& matrix() const { return p_; }
  int dim() const { return static_cast<int>(p_.rows()); }
  bool all_zero() const;
  /// Upper-triangular entries in flattening order.
  Vector upper() const { return flatten_upper(p_); }

 private:
  Matrix p_;
};

/// Symmetric positive-definite precision matrix plus its thresholded edge set.
class PrecisionEstimate {
 public:
  static constexpr double kDefaultZeroTol = 1e-8;

  /// Symmetrizes `omega` (entries must agree to 1e-8 relative) and checks positive definiteness.
  explicit PrecisionEstimate(Matrix omega, double zero_tol = kDefaultZeroTol);

  const Matrix& matrix() const { return omega_; }
  const EdgeSet& edges() const { return edges_; }
  double zero_tol() const { return zero_tol_; }
  int dim() const { return static_cast<int>(omega_.rows()); }

 private:
  Matrix omega_;
  EdgeSet edges_;
  double zero_tol_;
};

/// Everything in the parameter block except the precision matrix.
struct ShrinkageState {
  Vector alpha;  // log edge-specific shrinkage, flattened upper triangle
  Vector mu;     // edge-specific baseline
  double eta = 1.0;
  double nu = 1.0;
  double sigma2_lambda = 1.0;
  double sigma2_mu = 5.0;
  double mu0 = 0.0;
  double a_eta = 36.0;
  double b_eta = 6.0;
  /// False when eta is pinned (eta_zero / parametric modes): the Gamma prior term is dropped.
  bool eta_active = true;

  /// Throws InvariantError on violated invariants; `p` is the node count.
  void validate(int p) const;
};

// ---------------------------------------------------------------------------
// Operations

/// S = (1/T) sum_t y_t y_t'. Columns are mean-centered first when `center` is set.
SampleCovariance sample_covariance(const TimeSeriesData& y, bool center = false);

/// r_jk = -w_jk / sqrt(w_jj w_kk), unit diagonal.
Matrix partial_correlation(const Matrix& omega);
inline Matrix partial_correlation(const PrecisionEstimate& omega) {
  return partial_correlation(omega.matrix());
}

/// Log-determinant via Cholesky; throws DomainError if `m` is not positive definite.
double log_det_pd(const Matrix& m);
bool is_positive_definite(const Matrix& m);

EdgeSet support(const Matrix& m, double zero_tol = PrecisionEstimate::kDefaultZeroTol);

/// Additive pieces of the negative log-posterior.
struct ObjectiveTerms {
  double likelihood = 0;   // -log|Omega| + tr(S Omega)
  double offdiag_l1 = 0;   // nu sum_{j<k} e^alpha |w_jk|
  double diagonal = 0;     // (nu/2) sum_k w_kk
  double alpha_prior = 0;  // sum (alpha - (mu - eta p))^2 / (2 s2_lambda)
  double mu_prior = 0;     // sum (mu - mu0)^2 / (2 s2_mu)
  double eta_prior = 0;    // -(a-1) log eta + b eta
  double nu_constant = 0;  // -p log(nu/2)

  double total() const {
    return likelihood + offdiag_l1 + diagonal + alpha_prior + mu_prior + eta_prior + nu_constant;
  }
};

ObjectiveTerms objective_terms(const Matrix& omega, const ShrinkageState& state,
                               const SampleCovariance& s, const StructuralPrior& prior);

/// Negative log-posterior F(Theta); the MAP estimate minimizes it.
inline double objective(const PrecisionEstimate& omega, const ShrinkageState& state,
                        const SampleCovariance& s, const StructuralPrior& prior) {
  return objective_terms(omega.matrix(), state, s, prior).total();
}

}  // namespace siggm
