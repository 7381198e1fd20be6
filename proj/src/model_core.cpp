#include "siggm/model_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace siggm {

namespace {

bool all_finite(const Matrix& m) { return m.allFinite(); }

double max_abs_asymmetry(const Matrix& m) {
  return (m - m.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace

int nodes_for_pair_count(std::size_t m) {
  // p(p-1)/2 = m  =>  p = (1 + sqrt(1 + 8m)) / 2
  const auto p = static_cast<int>(std::llround((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(m))) / 2.0));
  if (pair_count(p) != m) {
    throw InputError("vector length " + std::to_string(m) + " is not p(p-1)/2 for any p");
  }
  return p;
}

Vector flatten_upper(const Matrix& m) {
  const int p = static_cast<int>(m.rows());
  Vector v(pair_count(p));
  std::size_t idx = 0;
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) v[static_cast<Eigen::Index>(idx++)] = m(j, k);
  return v;
}

Matrix unflatten_upper(const Vector& v, int p) {
  if (static_cast<std::size_t>(v.size()) != pair_count(p)) {
    throw InputError("flattened vector has wrong length for p=" + std::to_string(p));
  }
  Matrix m = Matrix::Zero(p, p);
  Eigen::Index idx = 0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      m(j, k) = v[idx];
      m(k, j) = v[idx];
      ++idx;
    }
  }
  return m;
}

TimeSeriesData::TimeSeriesData(Matrix values, std::vector<std::string> region_labels)
    : values_(std::move(values)), labels_(std::move(region_labels)) {
  if (values_.rows() < 2 || values_.cols() < 2) {
    throw InputError("time series needs at least 2 time points and 2 regions");
  }
  if (!all_finite(values_)) throw InputError("time series contains non-finite entries");
  if (!labels_.empty() && static_cast<Eigen::Index>(labels_.size()) != values_.cols()) {
    throw InputError("number of region labels does not match number of columns");
  }
}

SampleCovariance::SampleCovariance(Matrix s, int n_time) : s_(std::move(s)), n_time_(n_time) {
  if (s_.rows() != s_.cols() || s_.rows() < 1) throw InputError("covariance must be square");
  if (n_time_ < 1) throw InputError("covariance needs a positive number of time points");
  if (!all_finite(s_)) throw InputError("covariance contains non-finite entries");
  const double scale = std::max(1.0, s_.cwiseAbs().maxCoeff());
  if (max_abs_asymmetry(s_) > 1e-12 * scale) throw InputError("covariance is not symmetric");
  s_ = 0.5 * (s_ + s_.transpose()).eval();
  if ((s_.diagonal().array() < 0).any()) throw InputError("covariance has a negative diagonal entry");
}

StructuralPrior::StructuralPrior(Matrix p) : p_(std::move(p)) {
  if (p_.rows() != p_.cols()) throw InputError("structural prior must be square");
  if (!all_finite(p_)) throw InputError("structural prior contains non-finite entries");
  if (max_abs_asymmetry(p_) > 1e-12) throw InputError("structural prior is not symmetric");
  if ((p_.array() < 0.0).any() || (p_.array() > 1.0).any()) {
    throw InputError("structural prior entries must lie in [0,1]");
  }
  if (p_.diagonal().cwiseAbs().maxCoeff() > 0.0) {
    throw InputError("structural prior must have a zero diagonal");
  }
  p_ = 0.5 * (p_ + p_.transpose()).eval();
}

bool StructuralPrior::all_zero() const { return p_.cwiseAbs().maxCoeff() == 0.0; }

PrecisionEstimate::PrecisionEstimate(Matrix omega, double zero_tol)
    : omega_(std::move(omega)), zero_tol_(zero_tol) {
  if (omega_.rows() != omega_.cols()) throw InvariantError("precision matrix must be square");
  if (!all_finite(omega_)) throw InvariantError("precision matrix contains non-finite entries");
  const double scale = std::max(1.0, omega_.cwiseAbs().maxCoeff());
  if (max_abs_asymmetry(omega_) > 1e-8 * scale) throw InvariantError("precision matrix is not symmetric");
  omega_ = 0.5 * (omega_ + omega_.transpose()).eval();
  if (!is_positive_definite(omega_)) throw InvariantError("precision matrix is not positive definite");
  edges_ = support(omega_, zero_tol_);
}

void ShrinkageState::validate(int p) const {
  const auto m = static_cast<Eigen::Index>(pair_count(p));
  std::ostringstream why;
  if (alpha.size() != m) why << "alpha has length " << alpha.size() << ", expected " << m << "; ";
  if (mu.size() != m) why << "mu has length " << mu.size() << ", expected " << m << "; ";
  // a = 1 puts the eta mode at the boundary 0, which is then admissible
  if (eta_active && !(eta > 0) && !(a_eta == 1.0 && eta == 0.0)) why << "eta must be positive; ";
  if (!eta_active && eta < 0) why << "eta must be non-negative; ";
  if (!(nu > 0)) why << "nu must be positive; ";
  if (!(sigma2_lambda > 0)) why << "sigma2_lambda must be positive; ";
  if (!(sigma2_mu > 0)) why << "sigma2_mu must be positive; ";
  if (!(a_eta > 0) || !(b_eta > 0)) why << "Gamma hyperparameters must be positive; ";
  if (!alpha.allFinite() || !mu.allFinite()) why << "alpha/mu contain non-finite entries; ";
  const auto msg = why.str();
  if (!msg.empty()) throw InvariantError("invalid shrinkage state: " + msg);
}

SampleCovariance sample_covariance(const TimeSeriesData& y, bool center) {
  const Matrix& v = y.values();
  const auto t = static_cast<double>(v.rows());
  Matrix s;
  if (center) {
    const Matrix c = v.rowwise() - v.colwise().mean();
    s = (c.transpose() * c) / t;
  } else {
    s = (v.transpose() * v) / t;
  }
  s = 0.5 * (s + s.transpose()).eval();
  return SampleCovariance(std::move(s), y.n_time());
}

Matrix partial_correlation(const Matrix& omega) {
  const Eigen::Index p = omega.rows();
  if ((omega.diagonal().array() <= 0.0).any()) {
    throw InvariantError("partial correlation needs a positive diagonal");
  }
  const Vector inv_sd = omega.diagonal().cwiseSqrt().cwiseInverse();
  Matrix r = -(inv_sd.asDiagonal() * omega * inv_sd.asDiagonal());
  for (Eigen::Index j = 0; j < p; ++j) {
    r(j, j) = 1.0;
    for (Eigen::Index k = j + 1; k < p; ++k) {
      double v = 0.5 * (r(j, k) + r(k, j));
      if (std::abs(v) > 1.0 + 1e-10) throw InvariantError("partial correlation outside [-1,1]");
      v = std::clamp(v, -1.0, 1.0);
      r(j, k) = v;
      r(k, j) = v;
    }
  }
  return r;
}

double log_det_pd(const Matrix& m) {
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) throw DomainError("matrix is not positive definite");
  return 2.0 * llt.matrixLLT().diagonal().array().log().sum();
}

bool is_positive_definite(const Matrix& m) {
  if (m.rows() != m.cols() || !m.allFinite()) return false;
  Eigen::LLT<Matrix> llt(m);
  if (llt.info() != Eigen::Success) return false;
  return (llt.matrixLLT().diagonal().array() > 0.0).all();
}

EdgeSet support(const Matrix& m, double zero_tol) {
  EdgeSet out;
  const int p = static_cast<int>(m.rows());
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k)
      if (std::abs(m(j, k)) > zero_tol) out.push_back({j, k});
  return out;
}

ObjectiveTerms objective_terms(const Matrix& omega, const ShrinkageState& state,
                               const SampleCovariance& s, const StructuralPrior& prior) {
  const int p = static_cast<int>(omega.rows());
  if (s.dim() != p || prior.dim() != p) throw InputError("objective: dimension mismatch");
  state.validate(p);

  ObjectiveTerms t;
  t.likelihood = -log_det_pd(omega) + (s.matrix().cwiseProduct(omega)).sum();

  const Vector abs_w = flatten_upper(omega).cwiseAbs();
  t.offdiag_l1 = state.nu * (state.alpha.array().exp() * abs_w.array()).sum();
  t.diagonal = 0.5 * state.nu * omega.diagonal().sum();

  const Vector resid = state.alpha - (state.mu - state.eta * prior.upper());
  t.alpha_prior = resid.squaredNorm() / (2.0 * state.sigma2_lambda);
  t.mu_prior = (state.mu.array() - state.mu0).square().sum() / (2.0 * state.sigma2_mu);

  if (state.eta_active) {
    // (a-1) log(eta) vanishes identically when a = 1, including at eta = 0
    const double log_term = state.a_eta == 1.0 ? 0.0 : (state.a_eta - 1.0) * std::log(state.eta);
    t.eta_prior = -log_term + state.b_eta * state.eta;
  }
  t.nu_constant = -static_cast<double>(p) * std::log(0.5 * state.nu);
  return t;
}

}  // namespace siggm
