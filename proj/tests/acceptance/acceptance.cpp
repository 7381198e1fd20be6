// Runs the acceptance criteria and prints one PASS/FAIL line each.
// Usage: siggm_acceptance [criterion numbers...]   (default: all)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "siggm/bench.hpp"
#include "siggm/estimator.hpp"
#include "siggm/netmetrics.hpp"
#include "siggm/rng.hpp"
#include "siggm/simgen.hpp"
#include "siggm/wglasso.hpp"

using namespace siggm;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Matrix gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = n(rng);
  return m;
}

// ------------------------------------------------------------------ 1

Outcome oracle_equivalence() {
  const auto t0 = Clock::now();
  double worst = 0.0;
  int rule_violations = 0, p2_cases = 0;
  for (int inst = 0; inst < 100; ++inst) {
    Rng rng(derive_seed(1, static_cast<std::uint64_t>(inst)));
    const int p = 2 + inst % 9;
    const int t = 2 * p + 3;
    const Matrix y = gaussian(t, p, rng);
    const Matrix s = (y.transpose() * y) / t;
    std::uniform_real_distribution<double> u(0.0, 0.5);
    Matrix w(p, p);
    for (int j = 0; j < p; ++j) {
      w(j, j) = 0.5 * u(rng);
      for (int k = j + 1; k < p; ++k) w(j, k) = w(k, j) = u(rng);
    }
    const SampleCovariance sc(s, t);
    const wglasso::PenaltyWeights pw(w);
    const auto fast = wglasso::solve(sc, pw, {1e-10, 1000});
    const auto ref = wglasso::solve_reference(sc, pw, 1e-12);
    worst = std::max(worst, (fast.omega.matrix() - ref.matrix()).cwiseAbs().maxCoeff());
    if (p == 2) {
      ++p2_cases;
      const bool zero = std::abs(s(0, 1)) <= w(0, 1);
      if (zero != (fast.omega.matrix()(0, 1) == 0.0)) ++rule_violations;
      if (zero != (ref.matrix()(0, 1) == 0.0)) ++rule_violations;
    }
  }
  const double secs = seconds_since(t0);
  return {worst < 1e-5 && rule_violations == 0 && secs < 60.0,
          "max diff " + fmt("%.2e", worst) + ", p=2 rule violations " + std::to_string(rule_violations) + "/" +
              std::to_string(2 * p2_cases) + ", " + fmt("%.1f s", secs)};
}

// ------------------------------------------------------------------ 2

Outcome gradient_check() {
  double worst = 0.0;
  for (int st_i = 0; st_i < 50; ++st_i) {
    Rng rng(derive_seed(2, static_cast<std::uint64_t>(st_i)));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> n(0.0, 1.0);
    const int p = 3 + st_i % 6;
    const auto m = static_cast<Eigen::Index>(pair_count(p));
    ShrinkageState st;
    st.alpha.resize(m);
    st.mu.resize(m);
    Vector pu(m), absw(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      st.alpha[i] = 2.0 * n(rng);
      st.mu[i] = n(rng);
      pu[i] = u(rng) < 0.5 ? u(rng) : 0.0;
      absw[i] = u(rng) < 0.6 ? std::abs(n(rng)) : 0.0;
    }
    st.eta = 0.1 + 10 * u(rng);
    st.nu = 0.05 + 2 * u(rng);
    st.sigma2_lambda = 0.01 + 3 * u(rng);
    const Vector g = estimator::alpha_gradient(st.alpha, st, absw, pu);
    Vector fd(m);
    for (Eigen::Index i = 0; i < m; ++i) {
      const double h = 1e-5 * std::max(1.0, std::abs(st.alpha[i]));
      Vector a = st.alpha, b = st.alpha;
      a[i] += h;
      b[i] -= h;
      fd[i] = (estimator::alpha_subobjective(a, st, absw, pu) - estimator::alpha_subobjective(b, st, absw, pu)) /
              (2 * h);
    }
    const double rel = (fd - g).cwiseAbs().maxCoeff() / std::max(g.cwiseAbs().maxCoeff(), 1e-12);
    worst = std::max(worst, rel);
  }
  return {worst < 1e-5, "worst relative error " + fmt("%.2e", worst) + " over 50 states"};
}

// ------------------------------------------------------------------ 3

Outcome monotone_map() {
  const auto t0 = Clock::now();
  double worst_increase = -std::numeric_limits<double>::infinity();
  int failures = 0, iters = 0;
  for (int i = 0; i < 20; ++i) {
    sim::GraphTopology topo;
    topo.kind = i % 2 == 0 ? sim::Topology::small_world : sim::Topology::erdos_renyi;
    topo.p = 50;
    const auto gt = sim::make_ground_truth(topo, sim::ScSpec{}, 200, derive_seed(3, static_cast<std::uint64_t>(i)));
    const auto s = sample_covariance(gt.timeseries);
    estimator::FitConfig cfg;
    cfg.seed = static_cast<std::uint64_t>(i);
    const auto grid = estimator::default_nu_grid(s, gt.sc, cfg);
    cfg.nu = {grid[grid.size() / 2 + static_cast<std::size_t>(i % 5) - 2]};
    try {
      const auto r = estimator::fit(s, gt.sc, cfg);
      const auto& tr = r.objective_trace;
      iters += static_cast<int>(tr.size()) - 1;
      for (std::size_t k = 1; k < tr.size(); ++k) worst_increase = std::max(worst_increase, tr[k] - tr[k - 1]);
      // the recorded trace must be the model objective itself
      const double f_end = objective(r.omega, r.state, s, gt.sc);
      if (std::abs(f_end - tr.back()) > 1e-9 * std::max(1.0, std::abs(f_end))) ++failures;
    } catch (const std::exception& e) {
      ++failures;
      std::cerr << "  fit " << i << ": " << e.what() << "\n";
    }
  }
  return {failures == 0 && worst_increase <= 1e-8,
          "largest step change " + fmt("%.2e", worst_increase) + " over " + std::to_string(iters) +
              " outer iterations, " + std::to_string(failures) + " failures, " + fmt("%.1f s", seconds_since(t0))};
}

// ------------------------------------------------------------------ 4

Outcome reductions() {
  // (a) eta_zero output does not depend on P
  bool identical = true;
  for (int i = 0; i < 3; ++i) {
    sim::GraphTopology topo;
    topo.p = 30;
    const auto gt = sim::make_ground_truth(topo, sim::ScSpec{}, 200, derive_seed(41, static_cast<std::uint64_t>(i)));
    Rng rng(derive_seed(42, static_cast<std::uint64_t>(i)));
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix other = Matrix::Zero(30, 30);
    for (int j = 0; j < 30; ++j)
      for (int k = j + 1; k < 30; ++k) other(j, k) = other(k, j) = u(rng);
    const auto s = sample_covariance(gt.timeseries);
    estimator::FitConfig cfg;
    cfg.mode = estimator::FitMode::eta_zero;
    cfg.seed = 100 + static_cast<std::uint64_t>(i);
    const auto a = estimator::fit_path(s, gt.sc, cfg);
    const auto b = estimator::fit_path(s, StructuralPrior(other), cfg);
    identical = identical && a.nu == b.nu && a.selected == b.selected;
    for (std::size_t k = 0; identical && k < a.fits.size(); ++k) {
      identical = a.fits[k].omega.matrix() == b.fits[k].omega.matrix() &&
                  a.fits[k].state.alpha == b.fits[k].state.alpha && a.fits[k].state.mu == b.fits[k].state.mu &&
                  a.fits[k].objective_trace == b.fits[k].objective_trace;
    }
  }
  // (b) sigma2_lambda -> 0 with frozen baselines reproduces the parametric fit
  double worst = 0.0;
  for (int i = 0; i < 5; ++i) {
    sim::GraphTopology topo;
    topo.kind = sim::Topology::small_world;
    topo.p = 40;
    const auto gt = sim::make_ground_truth(topo, sim::ScSpec{}, 200, derive_seed(43, static_cast<std::uint64_t>(i)));
    const auto s = sample_covariance(gt.timeseries);
    for (double nu : {0.1, 0.3}) {
      estimator::FitConfig cfg;
      cfg.nu = {nu};
      cfg.freeze_mu_eta = true;
      cfg.hyper.sigma2_lambda = 1e-8;
      const auto a = estimator::fit(s, gt.sc, cfg);
      estimator::FitConfig base;
      base.nu = {nu};
      base.mode = estimator::FitMode::parametric_baseline;
      const auto b = estimator::fit(s, gt.sc, base);
      worst = std::max(worst, (a.omega.matrix() - b.omega.matrix()).cwiseAbs().maxCoeff());
    }
  }
  return {identical && worst < 1e-4, std::string("(a) eta_zero ") + (identical ? "bit-identical" : "DIFFERS") +
                                         "; (b) max diff " + fmt("%.2e", worst)};
}

// ------------------------------------------------------------------ 5

const bench::BenchmarkRow* find_row(const bench::BenchmarkReport& rep, const std::string& method,
                                    double misspec = -1) {
  for (const auto& r : rep.rows)
    if (r.method == method && (misspec < 0 || std::abs(r.scenario.misspec_frac - misspec) < 1e-9)) return &r;
  return nullptr;
}

Outcome table_reproduction() {
  const auto t0 = Clock::now();
  bench::BenchmarkConfig cfg;
  cfg.structures = {sim::Topology::small_world};
  cfg.p_values = {100};
  cfg.scenarios = {{sim::Scenario::MI, 0.10}};
  cfg.n_time = 200;
  cfg.n_replicates = 10;
  cfg.master_seed = 2015;
  const auto rep = bench::run_benchmark(cfg, bench::thread_budget());
  const double secs = seconds_since(t0);
  const auto* sg = find_row(rep, "siggm");
  const auto* e0 = find_row(rep, "siggm_eta0");
  const auto* gl = find_row(rep, "glasso");
  const auto* pb = find_row(rep, "parametric_baseline");
  if (!sg || !e0 || !gl || !pb) return {false, "missing benchmark rows"};
  for (const auto* r : {sg, e0, gl, pb}) {
    std::cerr << "  " << r->method << ": MCC " << fmt("%.3f", r->mcc.mean) << " AUC " << fmt("%.3f", r->auc.mean)
              << " L1 " << fmt("%.3f", r->l1.mean) << " eglob bias " << fmt("%.3f", r->eglob_bias.mean) << " ("
              << r->n_ok << " ok)\n";
  }
  const bool order = sg->mcc.mean > gl->mcc.mean && sg->mcc.mean > e0->mcc.mean;
  const bool mcc_ok = std::abs(sg->mcc.mean - 0.59) <= 0.12;
  const bool auc_ok = std::abs(sg->auc.mean - 0.884) <= 0.06;
  const bool l1_ok = std::abs(sg->l1.mean - 0.478) <= 0.10;
  const bool complete = sg->n_ok == 10 && e0->n_ok == 10 && gl->n_ok == 10;
  std::ostringstream d;
  d << "siGGM MCC " << fmt("%.3f", sg->mcc.mean) << " (glasso " << fmt("%.3f", gl->mcc.mean) << ", eta0 "
    << fmt("%.3f", e0->mcc.mean) << "), AUC " << fmt("%.3f", sg->auc.mean) << ", L1 " << fmt("%.3f", sg->l1.mean)
    << ", " << fmt("%.0f s", secs);
  if (!order) d << " [ordering]";
  if (!mcc_ok) d << " [MCC band]";
  if (!auc_ok) d << " [AUC band]";
  if (!l1_ok) d << " [L1 band]";
  return {order && mcc_ok && auc_ok && l1_ok && complete && secs <= 3600, d.str()};
}

// ------------------------------------------------------------------ 6

Outcome misspec_robustness() {
  const auto t0 = Clock::now();
  bench::BenchmarkConfig cfg;
  cfg.structures = {sim::Topology::erdos_renyi};
  cfg.p_values = {100};
  cfg.scenarios.clear();
  for (double m : bench::parse_sweep("0.04:0.50:0.092")) cfg.scenarios.push_back({sim::Scenario::MI, m});
  cfg.n_time = 200;
  cfg.n_replicates = 10;
  cfg.methods = {bench::Method::siggm, bench::Method::parametric_baseline};
  cfg.master_seed = 404;
  const auto rep = bench::run_benchmark(cfg, bench::thread_budget());

  std::vector<double> grid, l1_s, l1_b;
  bool below = true;
  for (const auto& sc : cfg.scenarios) {
    const auto* s = find_row(rep, "siggm", sc.misspec_frac);
    const auto* b = find_row(rep, "parametric_baseline", sc.misspec_frac);
    if (!s || !b) return {false, "missing rows"};
    grid.push_back(sc.misspec_frac);
    l1_s.push_back(s->l1.mean);
    l1_b.push_back(b->l1.mean);
    below = below && s->l1.mean < b->l1.mean;
    std::cerr << "  misspec " << fmt("%.3f", sc.misspec_frac) << ": siGGM L1 " << fmt("%.4f", s->l1.mean)
              << "  baseline L1 " << fmt("%.4f", b->l1.mean) << "\n";
  }
  const double rho_s = bench::spearman(grid, l1_s), rho_b = bench::spearman(grid, l1_b);
  return {below && rho_s > 0 && rho_b > 0,
          std::to_string(grid.size()) + " grid points, siGGM below baseline everywhere: " + (below ? "yes" : "no") +
              ", Spearman " + fmt("%.2f", rho_s) + " / " + fmt("%.2f", rho_b) + ", " +
              fmt("%.0f s", seconds_since(t0))};
}

// ------------------------------------------------------------------ 7

Outcome timing() {
  double secs[2] = {0, 0};
  const int ps[2] = {100, 200};
  for (int i = 0; i < 2; ++i) {
    sim::GraphTopology topo;
    topo.kind = sim::Topology::small_world;
    topo.p = ps[i];
    const auto gt = sim::make_ground_truth(topo, sim::ScSpec{}, 200, derive_seed(7, static_cast<std::uint64_t>(i)));
    const auto t0 = Clock::now();
    const auto path = estimator::fit_path(sample_covariance(gt.timeseries), gt.sc, estimator::FitConfig{});
    secs[i] = seconds_since(t0);
    std::cerr << "  p=" << ps[i] << ": " << fmt("%.1f s", secs[i]) << ", selected "
              << path.fits[path.selected].omega.edges().size() << " edges\n";
  }
  return {secs[0] <= 60 && secs[1] <= 480,
          "p=100 " + fmt("%.1f s", secs[0]) + " (limit 60), p=200 " + fmt("%.1f s", secs[1]) + " (limit 480)"};
}

// ------------------------------------------------------------------ 8

Outcome metric_suite() {
  std::vector<std::string> failed;
  auto check = [&](bool ok, const std::string& what) {
    if (!ok) failed.push_back(what);
  };
  metrics::ConfusionCounts c;
  c.tp = 5;
  c.tn = 80;
  c.fp = 10;
  c.fn = 5;
  check(std::abs(metrics::mcc(c) - 0.3267) <= 1e-4, "mcc hand value");
  check(metrics::mcc(metrics::confusion({{0, 1}, {1, 2}}, {{0, 1}, {1, 2}}, 4)) == 1.0, "mcc perfect");
  check(metrics::mcc(metrics::confusion({}, {{0, 1}}, 4)) == 0.0, "mcc degenerate");
  check(std::abs(metrics::global_efficiency({{0, 1}, {1, 2}}, 3) - 5.0 / 6.0) < 1e-15, "path efficiency");
  check(metrics::global_efficiency({}, 5) == 0.0, "empty efficiency");
  check(std::abs(metrics::global_efficiency({{0, 1}, {0, 2}, {1, 2}}, 3) - 1.0) < 1e-15, "complete efficiency");
  check(std::abs(metrics::auc({EdgeSet{}}, {{0, 1}}, 4) - 0.5) < 1e-15, "empty-path auc");
  check(std::abs(metrics::auc({EdgeSet{{0, 1}}}, {{0, 1}}, 4) - 1.0) < 1e-15, "perfect auc");
  const Matrix w = Matrix::Identity(3, 3) * 2.0;
  check(metrics::rel_l1_error(w, w) == 0.0 && std::abs(metrics::rel_l1_error(2 * w, w) - 1.0) < 1e-15 &&
            std::abs(metrics::rel_l1_error(Matrix::Zero(3, 3), w) - 1.0) < 1e-15,
        "relative L1");
  const auto tri = metrics::graph_summaries({{0, 1}, {0, 2}, {1, 2}}, 3);
  check(tri.clustering == 1.0 && tri.char_path_length == 1.0 && tri.mean_degree == 2.0, "triangle summaries");
  check(metrics::graph_summaries({{0, 1}, {0, 2}, {0, 3}}, 4).clustering == 0.0, "star clustering");
  Matrix dup(4, 2);
  dup.col(0) << 1.0, 3.0, 2.0, 7.0;
  dup.col(1) = dup.col(0);
  const auto icc = metrics::icc31(dup);
  check(icc && std::abs(*icc - 1.0) < 1e-12, "icc duplicated sessions");
  const int p = 8;
  const metrics::ModuleAssignment mods{{1, 1, 1, 1, 2, 2, 2, 2}};
  std::vector<bool> mask(pair_count(p), false);
  int w1 = 0, w2 = 0, bt = 0;
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) {
      const bool between = mods.labels[j] != mods.labels[k];
      int& ctr = between ? bt : (mods.labels[j] == 1 ? w1 : w2);
      if (ctr < (between ? 8 : 3)) {
        mask[pair_index(j, k, p)] = true;
        ++ctr;
      }
    }
  bool zero = true;
  for (const auto& b : metrics::module_chi_square(mask, mods, 100, 1)) zero = zero && std::abs(b.chi2) < 1e-12;
  check(zero, "chi-square proportional spread");
  const Matrix same = Matrix::Constant(5, 10, 0.3);
  const auto r = metrics::dwe_test(same, same, 200);
  check(std::none_of(r.significant.begin(), r.significant.end(), [](bool b) { return b; }), "dwe identical groups");
  std::string detail = failed.empty() ? "all metric examples hold" : "failed:";
  for (const auto& f : failed) detail += " " + f + ";";
  return {failed.empty(), detail};
}

// ------------------------------------------------------------------ 9

Outcome dwe_calibration() {
  const auto t0 = Clock::now();
  long flagged = 0, total = 0;
  for (int rep = 0; rep < 50; ++rep) {
    Rng rng(derive_seed(9, static_cast<std::uint64_t>(rep)));
    const Matrix a = gaussian(15, 200, rng), b = gaussian(15, 200, rng);
    const auto r = metrics::dwe_test(a, b, 5000, 0.05, derive_seed(90, static_cast<std::uint64_t>(rep)));
    flagged += std::count(r.significant.begin(), r.significant.end(), true);
    total += static_cast<long>(r.significant.size());
  }
  const double frac = static_cast<double>(flagged) / static_cast<double>(total);
  return {frac <= 0.07, "flagged fraction " + fmt("%.4f", frac) + " (" + std::to_string(flagged) + "/" +
                            std::to_string(total) + "), " + fmt("%.0f s", seconds_since(t0))};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"wglasso oracle equivalence", oracle_equivalence},
      {"alpha gradient check", gradient_check},
      {"monotone MAP objective", monotone_map},
      {"reduction checks", reductions},
      {"small-world p=100 MI(a) table cell", table_reproduction},
      {"misspecification robustness", misspec_robustness},
      {"timing", timing},
      {"metric unit suite", metric_suite},
      {"DWE null calibration", dwe_calibration},
  };
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::cout << "criterion " << id << " (" << criteria[i].first << "): " << (o.pass ? "PASS" : "FAIL") << " | "
              << o.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
