#include "siggm/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace siggm::estimator {

namespace {

constexpr double kEtaFloor = 1e-6;
constexpr double kSigma2LambdaFloor = 0.01;
constexpr double kPriorThreshold = 0.01;

std::vector<double> log_spaced(double lo, double hi, int n) {
  std::vector<double> out(static_cast<std::size_t>(n));
  if (n == 1) {
    out[0] = hi;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = std::exp(a + (b - a) * i / (n - 1));
  return out;
}

double edge_density(const PrecisionEstimate& omega) {
  return static_cast<double>(omega.edges().size()) / static_cast<double>(pair_count(omega.dim()));
}

/// Plain glasso start: off-diagonal weight lambda, diagonal nu/2, lambda picked by BIC.
std::pair<PrecisionEstimate, double> initial_glasso(const SampleCovariance& s, const FitConfig& cfg, double nu) {
  const int p = s.dim();
  const Matrix& sm = s.matrix();
  double lambda_max = 0.0;
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) lambda_max = std::max(lambda_max, std::abs(sm(j, k)));
  if (lambda_max <= 0.0) lambda_max = 1e-3;

  const int n = std::max(1, cfg.init_grid_size);
  const std::vector<double> grid = log_spaced(0.05 * lambda_max, lambda_max, n);

  std::vector<PrecisionEstimate> fits;
  std::vector<double> bics;
  fits.reserve(grid.size());
  const PrecisionEstimate* warm = nullptr;
  for (auto it = grid.rbegin(); it != grid.rend(); ++it) {
    auto sol = wglasso::solve(s, wglasso::PenaltyWeights::uniform(p, *it, 0.5 * nu), cfg.solver, warm);
    fits.push_back(std::move(sol.omega));
    bics.push_back(bic(s, fits.back()));
    warm = &fits.back();
  }
  // fits are in descending-lambda order; prefer the larger lambda on ties
  std::size_t best = 0;
  for (std::size_t i = 1; i < bics.size(); ++i)
    if (bics[i] < bics[best]) best = i;
  const double lambda_eff = grid[grid.size() - 1 - best];
  // weight nu * lambda0 / 2 must reproduce the selected off-diagonal penalty
  return {fits[best], 2.0 * lambda_eff / nu};
}

}  // namespace

std::string to_string(FitMode mode) {
  switch (mode) {
    case FitMode::full: return "full";
    case FitMode::eta_zero: return "eta_zero";
    case FitMode::parametric_baseline: return "parametric_baseline";
  }
  return "full";
}

FitMode fit_mode_from_string(const std::string& name) {
  if (name == "full") return FitMode::full;
  if (name == "eta_zero") return FitMode::eta_zero;
  if (name == "parametric_baseline") return FitMode::parametric_baseline;
  throw InputError("unknown fit mode '" + name + "'");
}

void FitConfig::validate() const {
  if (!(epsilon > 0)) throw InputError("epsilon must be positive");
  if (max_outer < 1) throw InputError("max_outer must be at least 1");
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!(nu[i] > 0) || !std::isfinite(nu[i])) throw InputError("nu values must be positive and finite");
    if (i > 0 && !(nu[i] > nu[i - 1])) throw InputError("nu grid must be strictly increasing");
  }
  if (newton.max_steps < 1 || newton.max_backtracks < 1) throw InputError("newton options must allow a step");
  if (!(newton.step_shrink > 0 && newton.step_shrink < 1)) throw InputError("newton step_shrink must be in (0,1)");
  if (hyper.sigma2_lambda && !(*hyper.sigma2_lambda > 0)) throw InputError("sigma2_lambda must be positive");
  if (hyper.sigma2_mu && !(*hyper.sigma2_mu > 0)) throw InputError("sigma2_mu must be positive");
  if (hyper.a_eta && !(*hyper.a_eta > 0)) throw InputError("a_eta must be positive");
  if (hyper.b_eta && !(*hyper.b_eta > 0)) throw InputError("b_eta must be positive");
}

Hyperparameters resolve_hyper(const HyperOverrides& o) {
  Hyperparameters h;
  const auto [a, b] = gamma_moment_match(6.0, 1.0);
  h.a_eta = a;
  h.b_eta = b;
  if (o.mu0) h.mu0 = *o.mu0;
  if (o.sigma2_mu) h.sigma2_mu = *o.sigma2_mu;
  if (o.a_eta) h.a_eta = *o.a_eta;
  if (o.b_eta) h.b_eta = *o.b_eta;
  return h;
}

std::pair<double, double> gamma_moment_match(double mean, double variance) {
  if (!(mean > 0) || !(variance > 0)) throw InputError("Gamma moments must be positive");
  // mean = a/b, variance = a/b^2
  const double b = mean / variance;
  return {mean * b, b};
}

double initial_eta(double log_lambda0, const Vector& mu, const Vector& prior_upper, double a_eta, double b_eta) {
  double sum = 0.0;
  int count = 0;
  for (Eigen::Index i = 0; i < prior_upper.size(); ++i) {
    if (prior_upper[i] > kPriorThreshold) {
      sum += (mu[i] - log_lambda0) / prior_upper[i];
      ++count;
    }
  }
  if (count == 0) return a_eta / b_eta;
  return std::clamp(sum / count, 0.01, 2.0 * a_eta / b_eta);
}

double initial_sigma2_lambda(double log_lambda0, const Vector& mu, double eta, const Vector& prior_upper) {
  const Vector resid = (log_lambda0 - mu.array() + eta * prior_upper.array()).matrix();
  const double mean_sq = resid.size() > 0 ? resid.squaredNorm() / static_cast<double>(resid.size()) : 0.0;
  return std::max(mean_sq, kSigma2LambdaFloor);
}

Initialization initialize(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg, double nu) {
  cfg.validate();
  const int p = s.dim();
  if (prior.dim() != p) throw InputError("structural prior and covariance differ in dimension");
  if (!(nu > 0)) throw InputError("nu must be positive");

  std::vector<std::string> warnings;
  FitMode mode = cfg.mode;
  if (mode == FitMode::full && prior.all_zero() && !cfg.freeze_mu_eta) {
    warnings.emplace_back("structural prior is all zero; falling back to eta_zero mode");
    mode = FitMode::eta_zero;
  }

  const Hyperparameters h = resolve_hyper(cfg.hyper);
  auto [omega0, lambda0] = initial_glasso(s, cfg, nu);
  const double log_lambda0 = std::log(lambda0);
  const auto m = static_cast<Eigen::Index>(pair_count(p));
  const Vector pu = mode == FitMode::eta_zero ? Vector::Zero(m) : prior.upper();

  ShrinkageState st;
  st.nu = nu;
  st.mu0 = h.mu0;
  st.sigma2_mu = h.sigma2_mu;
  st.a_eta = h.a_eta;
  st.b_eta = h.b_eta;

  if (mode == FitMode::parametric_baseline) {
    st.eta = cfg.baseline_eta;
    st.eta_active = false;
    st.mu = Vector::Constant(m, h.mu0);
    st.alpha = (st.mu.array() - st.eta * pu.array()).matrix();
    st.sigma2_lambda = cfg.hyper.sigma2_lambda.value_or(1.0);
  } else {
    st.alpha = Vector::Constant(m, log_lambda0);
    if (cfg.freeze_mu_eta) {
      st.mu = Vector::Constant(m, h.mu0);
      st.eta = mode == FitMode::eta_zero ? 0.0 : cfg.baseline_eta;
      st.eta_active = false;
    } else {
      std::mt19937_64 rng(cfg.seed);
      std::normal_distribution<double> draw(h.mu0, std::sqrt(h.sigma2_mu));
      st.mu.resize(m);
      for (Eigen::Index i = 0; i < m; ++i) st.mu[i] = draw(rng);
      if (mode == FitMode::eta_zero) {
        st.eta = 0.0;
        st.eta_active = false;
      } else {
        st.eta = initial_eta(log_lambda0, st.mu, pu, h.a_eta, h.b_eta);
        st.eta_active = true;
      }
    }
    st.sigma2_lambda = cfg.hyper.sigma2_lambda ? *cfg.hyper.sigma2_lambda
                                               : initial_sigma2_lambda(log_lambda0, st.mu, st.eta, pu);
  }
  st.validate(p);
  return Initialization{std::move(omega0), std::move(st), lambda0, mode, std::move(warnings)};
}

wglasso::PenaltyWeights penalty_weights(const ShrinkageState& state, int p) {
  Matrix w = unflatten_upper((0.5 * state.nu * state.alpha.array().exp()).matrix(), p);
  w.diagonal().setConstant(0.5 * state.nu);
  return wglasso::PenaltyWeights(std::move(w));
}

PrecisionEstimate update_omega(const SampleCovariance& s, const ShrinkageState& state, const PrecisionEstimate& warm,
                               const wglasso::SolverOptions& opts) {
  return wglasso::solve(s, penalty_weights(state, s.dim()), opts, &warm).omega;
}

Vector update_mu(const ShrinkageState& st, const StructuralPrior& prior) {
  const Vector pu = prior.upper();
  const double denom = st.sigma2_mu + st.sigma2_lambda;
  return ((st.sigma2_mu * (st.alpha.array() + st.eta * pu.array()) + st.sigma2_lambda * st.mu0) / denom).matrix();
}

EtaUpdate update_eta(const ShrinkageState& st, const StructuralPrior& prior) {
  const Vector pu = prior.upper();
  const double gamma = pu.squaredNorm() / st.sigma2_lambda;
  EtaUpdate out;
  if (!(gamma > 0)) {
    out.fallback = true;
    out.eta = std::max((st.a_eta - 1.0) / st.b_eta, kEtaFloor);
    return out;
  }
  const double beta = st.b_eta + (st.alpha - st.mu).dot(pu) / st.sigma2_lambda;
  const double rho = -(st.a_eta - 1.0);
  const double disc = beta * beta - 4.0 * gamma * rho;
  double root;
  if (disc < 0) {
    root = 0.0;
  } else if (beta > 0) {
    // (-beta + sqrt(disc)) / (2 gamma) without cancellation
    root = -2.0 * rho / (beta + std::sqrt(disc));
  } else {
    root = (-beta + std::sqrt(disc)) / (2.0 * gamma);
  }
  if (!(root >= kEtaFloor)) {
    out.clamped = true;
    root = kEtaFloor;
  }
  out.eta = root;
  return out;
}

double alpha_subobjective(const Vector& alpha, const ShrinkageState& st, const Vector& abs_omega,
                          const Vector& prior_upper) {
  const auto target = st.mu.array() - st.eta * prior_upper.array();
  return st.sigma2_lambda * st.nu * (alpha.array().exp() * abs_omega.array()).sum() +
         0.5 * (alpha.array() - target).square().sum();
}

Vector alpha_gradient(const Vector& alpha, const ShrinkageState& st, const Vector& abs_omega,
                      const Vector& prior_upper) {
  const auto target = st.mu.array() - st.eta * prior_upper.array();
  return (st.nu * st.sigma2_lambda * abs_omega.array() * alpha.array().exp() + (alpha.array() - target)).matrix();
}

AlphaUpdate update_alpha(const ShrinkageState& st, const PrecisionEstimate& omega, const StructuralPrior& prior,
                         const NewtonOptions& opts) {
  const Vector pu = prior.upper();
  const Eigen::ArrayXd c = st.nu * st.sigma2_lambda * flatten_upper(omega.matrix()).cwiseAbs().array();
  const Eigen::ArrayXd target = st.mu.array() - st.eta * pu.array();
  const Eigen::Index m = st.alpha.size();

  AlphaUpdate out;
  Eigen::ArrayXd a = st.alpha.array();
  auto coord_obj = [&](const Eigen::ArrayXd& x) { return (c * x.exp() + 0.5 * (x - target).square()).eval(); };

  for (int step = 0; step < opts.max_steps; ++step) {
    const Eigen::ArrayXd e = a.exp();
    const Eigen::ArrayXd g = c * e + (a - target);
    out.grad_norm = m > 0 ? g.abs().maxCoeff() : 0.0;
    if (out.grad_norm < opts.grad_tol) break;
    const Eigen::ArrayXd h = c * e + 1.0;
    const Eigen::ArrayXd dir = -g / h;
    const Eigen::ArrayXd f0 = coord_obj(a);

    // The subproblem is separable, so each coordinate gets its own Armijo step.
    Eigen::ArrayXd t = Eigen::ArrayXd::Ones(m);
    Eigen::Array<bool, Eigen::Dynamic, 1> done = (g == 0.0);
    for (int bt = 0; bt <= opts.max_backtracks; ++bt) {
      const Eigen::ArrayXd trial = a + t * dir;
      const Eigen::ArrayXd f1 = coord_obj(trial);
      bool all_done = true;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (done[i]) continue;
        if (f1[i] <= f0[i] + opts.armijo_c * t[i] * g[i] * dir[i]) {
          a[i] = trial[i];
          done[i] = true;
        } else if (bt < opts.max_backtracks) {
          t[i] *= opts.step_shrink;
          all_done = false;
        }
      }
      if (all_done) break;
    }
    if (!done.all()) out.stalled = true;
    out.steps = step + 1;
  }
  {
    const Eigen::ArrayXd g = c * a.exp() + (a - target);
    out.grad_norm = m > 0 ? g.abs().maxCoeff() : 0.0;
  }
  out.alpha = a.matrix();
  return out;
}

double bic(const SampleCovariance& s, const PrecisionEstimate& omega) {
  const double t = s.n_time();
  const double nll = -log_det_pd(omega.matrix()) + s.matrix().cwiseProduct(omega.matrix()).sum();
  return t * nll + std::log(t) * static_cast<double>(omega.edges().size());
}

FitResult fit_from(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg, double nu,
                   Initialization start) {
  const int p = s.dim();
  const FitMode mode = start.mode;
  // eta_zero never touches the supplied prior, so its output cannot depend on it
  const StructuralPrior effective = mode == FitMode::eta_zero ? StructuralPrior::zeros(p) : prior;

  ShrinkageState st = std::move(start.state);
  st.nu = nu;
  if (mode == FitMode::parametric_baseline) {
    st.mu = Vector::Constant(st.mu.size(), st.mu0);
    st.alpha = (st.mu.array() - st.eta * effective.upper().array()).matrix();
  }
  PrecisionEstimate omega = std::move(start.omega);
  std::vector<std::string> warnings = std::move(start.warnings);

  std::vector<double> trace;
  double f_prev = objective(omega, st, s, effective);
  trace.push_back(f_prev);

  bool converged = false;
  int iter = 0;
  bool warned_eta = false, warned_alpha = false;
  for (iter = 1; iter <= cfg.max_outer; ++iter) {
    omega = update_omega(s, st, omega, cfg.solver);
    if (mode != FitMode::parametric_baseline) {
      if (!cfg.freeze_mu_eta) {
        st.mu = update_mu(st, effective);
        if (mode == FitMode::full) {
          const EtaUpdate eu = update_eta(st, effective);
          st.eta = eu.eta;
          if ((eu.fallback || eu.clamped) && !warned_eta) {
            warnings.emplace_back(eu.fallback ? "eta unidentified: using prior mode" : "eta clamped at 1e-6");
            warned_eta = true;
          }
        }
      }
      const AlphaUpdate au = update_alpha(st, omega, effective, cfg.newton);
      st.alpha = au.alpha;
      if (au.stalled && !warned_alpha) {
        warnings.emplace_back("alpha line search stalled on some coordinates");
        warned_alpha = true;
      }
    }
    const double f = objective(omega, st, s, effective);
    if (f > f_prev + 1e-8 * std::max(1.0, std::abs(f_prev))) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "objective increased at outer iteration " << iter << ": " << f_prev << " -> " << f;
      throw InvariantError(msg.str());
    }
    trace.push_back(f);
    if (std::abs(f_prev - f) < cfg.epsilon * std::abs(f)) {
      converged = true;
      f_prev = f;
      break;
    }
    f_prev = f;
  }

  FitResult r{std::move(omega), std::move(st), std::move(trace), std::min(iter, cfg.max_outer), converged,
              0.0, mode, start.lambda0, std::move(warnings)};
  r.bic = bic(s, r.omega);
  return r;
}

FitResult fit(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg) {
  if (cfg.nu.size() != 1) throw InputError("fit needs exactly one nu value; use fit_path for grids");
  return fit_from(s, prior, cfg, cfg.nu[0], initialize(s, prior, cfg, cfg.nu[0]));
}

FitResult fit(const TimeSeriesData& y, const StructuralPrior& prior, const FitConfig& cfg) {
  return fit(sample_covariance(y), prior, cfg);
}

std::size_t select_min_bic(const std::vector<double>& bics) {
  if (bics.empty()) throw InputError("empty BIC list");
  std::size_t best = 0;
  for (std::size_t i = 1; i < bics.size(); ++i)
    if (bics[i] <= bics[best]) best = i;
  return best;
}

std::vector<double> default_nu_grid(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg) {
  const int p = s.dim();
  const Matrix& sm = s.matrix();
  double smax = 0.0;
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) smax = std::max(smax, std::abs(sm(j, k)));
  if (smax <= 0.0) smax = 1e-3;

  // Bracketing pre-fits use the prior-mean shrinkage e^{mu0 - eta p}, one weighted glasso each.
  const Hyperparameters h = resolve_hyper(cfg.hyper);
  double eta_bar = 0.0;
  if (cfg.mode == FitMode::parametric_baseline || cfg.freeze_mu_eta) {
    eta_bar = cfg.mode == FitMode::eta_zero ? 0.0 : cfg.baseline_eta;
  } else if (cfg.mode == FitMode::full && !prior.all_zero()) {
    eta_bar = h.a_eta / h.b_eta;
  }
  const Matrix shape = unflatten_upper((h.mu0 - eta_bar * prior.upper().array()).exp().matrix(), p);
  std::optional<PrecisionEstimate> warm;
  auto density_at = [&](double nu) {
    Matrix w = 0.5 * nu * shape;
    w.diagonal().setConstant(0.5 * nu);
    auto sol = wglasso::solve(s, wglasso::PenaltyWeights(std::move(w)), cfg.solver, warm ? &*warm : nullptr);
    const double d = edge_density(sol.omega);
    warm = std::move(sol.omega);
    return d;
  };

  double hi = 2.0 * smax;
  for (int tries = 0; tries < 12 && density_at(hi) > 0.01; ++tries) hi *= 4.0;
  double lo = hi / 64.0;
  for (int tries = 0; tries < 12 && density_at(lo) < 0.30; ++tries) lo /= 4.0;
  return log_spaced(lo, hi, std::max(2, cfg.default_grid_size));
}

PathResult fit_path(const SampleCovariance& s, const StructuralPrior& prior, const FitConfig& cfg) {
  cfg.validate();
  PathResult out;
  out.nu = cfg.nu.empty() ? default_nu_grid(s, prior, cfg) : cfg.nu;
  const std::size_t n = out.nu.size();
  std::vector<std::optional<FitResult>> fits(n);

  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t i = n - 1 - r;
    const double nu = out.nu[i];
    if (r == 0) {
      fits[i] = fit_from(s, prior, cfg, nu, initialize(s, prior, cfg, nu));
    } else {
      const FitResult& prev = *fits[i + 1];
      Initialization warm{prev.omega, prev.state, prev.lambda0, prev.mode, {}};
      fits[i] = fit_from(s, prior, cfg, nu, std::move(warm));
      if (fits[i]->omega.edges().size() < prev.omega.edges().size()) {
        out.warnings.push_back("edge count decreased as nu decreased at nu=" + std::to_string(nu));
      }
    }
  }
  std::vector<double> bics;
  for (auto& f : fits) {
    bics.push_back(f->bic);
    out.fits.push_back(std::move(*f));
  }
  // ties toward larger nu == larger index
  out.selected = select_min_bic(bics);
  return out;
}

}  // namespace siggm::estimator
