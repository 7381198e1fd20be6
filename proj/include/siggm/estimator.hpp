#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siggm/model_core.hpp"
#include "siggm/wglasso.hpp"

namespace siggm::estimator {

enum class FitMode {
  full,                // alpha, mu, eta all estimated
  eta_zero,            // structural prior ignored, eta pinned at 0
  parametric_baseline  // alpha = mu0 - eta_bar * p, only Omega estimated
};

std::string to_string(FitMode mode);
FitMode fit_mode_from_string(const std::string& name);

/// Optional replacements for the default hyperparameters.
struct HyperOverrides {
  std::optional<double> mu0;
  std::optional<double> sigma2_mu;
  std::optional<double> a_eta;
  std::optional<double> b_eta;
  std::optional<double> sigma2_lambda;
};

struct NewtonOptions {
  double step_shrink = 0.5;
  double armijo_c = 1e-4;
  int max_backtracks = 50;
  int max_steps = 10;
  double grad_tol = 1e-6;
};

struct FitConfig {
  /// Sparsity tuners; one value for `fit`, a strictly increasing grid for `fit_path`.
  /// Empty means "calibrate a default grid" (fit_path only).
  std::vector<double> nu;
  double epsilon = 1e-4;
  int max_outer = 200;
  FitMode mode = FitMode::full;
  HyperOverrides hyper;
  NewtonOptions newton;
  wglasso::SolverOptions solver;
  std::uint64_t seed = 0;

  /// Fixed eta used by parametric_baseline (and by freeze_mu_eta).
  double baseline_eta = 6.0;
  /// Hold mu = mu0 and eta = baseline_eta fixed while alpha and Omega are estimated.
  bool freeze_mu_eta = false;
  /// Size of the internal penalty grid used to pick the initial glasso fit.
  int init_grid_size = 8;
  /// Number of values in the calibrated default nu grid.
  int default_grid_size = 20;

  void validate() const;
};

/// Default hyperparameters: mu0 = 0, sigma2_mu = 5, (a_eta, b_eta) = (36, 6) giving E[eta]=6, Var[eta]=1.
struct Hyperparameters {
  double mu0 = 0.0;
  double sigma2_mu = 5.0;
  double a_eta = 36.0;
  double b_eta = 6.0;
};
Hyperparameters resolve_hyper(const HyperOverrides& o);

/// Shape/rate of a Gamma distribution with the given mean and variance.
std::pair<double, double> gamma_moment_match(double mean, double variance);

struct FitResult {
  PrecisionEstimate omega;
  ShrinkageState state;
  std::vector<double> objective_trace;
  int n_iter = 0;
  bool converged = false;
  double bic = 0;
  FitMode mode = FitMode::full;
  double lambda0 = 0;
  std::vector<std::string> warnings;
};

struct Initialization {
  PrecisionEstimate omega;
  ShrinkageState state;
  double lambda0 = 0;
  FitMode mode = FitMode::full;  // may degrade to eta_zero when the prior is empty
  std::vector<std::string> warnings;
};

/// Starting point: glasso fit with BIC-selected global penalty, alpha = log(lambda0),
/// random baselines mu ~ N(mu0, sigma2_mu), eta and sigma2_lambda from the
/// deterministic relation log(lambda0) = mu - eta p.
Initialization initialize(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg, double nu);

/// Mean of (mu_jk - log_lambda0) / p_jk over pairs with p_jk > 0.01, clamped to
/// [0.01, 2 a/b]; a/b when no pair qualifies.
double initial_eta(double log_lambda0, const Vector& mu, const Vector& prior_upper, double a_eta, double b_eta);

/// Mean of (log_lambda0 - mu_jk + eta p_jk)^2, floored at 0.01.
double initial_sigma2_lambda(double log_lambda0, const Vector& mu, double eta, const Vector& prior_upper);

/// W_jk = nu e^{alpha_jk} / 2 off the diagonal, nu / 2 on it.
wglasso::PenaltyWeights penalty_weights(const ShrinkageState& state, int p);

PrecisionEstimate update_omega(const SampleCovariance& s, const ShrinkageState& state, const PrecisionEstimate& warm,
                               const wglasso::SolverOptions& opts = {});

/// Closed-form conditional minimizer of the baselines.
Vector update_mu(const ShrinkageState& state, const StructuralPrior& prior);

struct EtaUpdate {
  double eta = 0;
  bool fallback = false;  // prior mode used (no structural signal)
  bool clamped = false;   // root fell below the 1e-6 floor
};

/// Positive root of gamma eta^2 + beta eta + rho = 0 (stationarity of the objective in eta).
EtaUpdate update_eta(const ShrinkageState& state, const StructuralPrior& prior);

/// sigma2_lambda nu sum e^alpha |w| + (1/2) sum (alpha - (mu - eta p))^2. This is the
/// alpha-block of the objective multiplied by sigma2_lambda, so its gradient is g(alpha).
double alpha_subobjective(const Vector& alpha, const ShrinkageState& state, const Vector& abs_omega,
                          const Vector& prior_upper);
Vector alpha_gradient(const Vector& alpha, const ShrinkageState& state, const Vector& abs_omega,
                      const Vector& prior_upper);

struct AlphaUpdate {
  Vector alpha;
  int steps = 0;
  bool stalled = false;
  double grad_norm = 0;
};

/// Damped Newton steps with the diagonal Hessian, Armijo backtracking per coordinate.
AlphaUpdate update_alpha(const ShrinkageState& state, const PrecisionEstimate& omega, const StructuralPrior& prior,
                         const NewtonOptions& opts = {});

/// T [-log|Omega| + tr(S Omega)] + log(T) |E|.
double bic(const SampleCovariance& s, const PrecisionEstimate& omega);

/// Single-nu fit (cfg.nu must hold exactly one value).
FitResult fit(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg);
FitResult fit(const TimeSeriesData& y, const StructuralPrior& prior, const FitConfig& cfg);

/// Continues a fit from an existing state/precision (used for warm-started paths).
FitResult fit_from(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg, double nu,
                   Initialization start);

struct PathResult {
  std::vector<double> nu;          // ascending
  std::vector<FitResult> fits;     // fits[i] belongs to nu[i]
  std::size_t selected = 0;        // argmin BIC, ties toward larger nu
  std::vector<std::string> warnings;
};

/// Fits every grid value from the largest nu down, each warm-started from the previous.
PathResult fit_path(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg);

/// Log-spaced grid whose sparsest fit has <= 1% edge density and densest >= 30%.
std::vector<double> default_nu_grid(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg);

/// Argmin of `bics`, ties toward the larger index.
std::size_t select_min_bic(const std::vector<double>& bics);

}  // namespace siggm::estimator
