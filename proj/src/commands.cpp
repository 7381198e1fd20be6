#include "siggm/commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>

#include <CLI11.hpp>

#include "siggm/bench.hpp"
#include "siggm/io.hpp"
#include "siggm/rng.hpp"

namespace siggm::cli {

namespace fs = std::filesystem;
using io::Json;

namespace {

struct Common {
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  bool verbose = false;
};

void add_common(CLI::App* cmd, Common& c, bool out_required) {
  cmd->add_option("--seed", c.seed, "Random seed")->each([&c](const std::string&) { c.seed_set = true; });
  auto* o = cmd->add_option("--out", c.out, "Output path");
  if (out_required) o->required();
  cmd->add_flag("--verbose", c.verbose, "Progress and warnings on stderr");
}

/// Re-throws input errors with the offending file named.
template <class F>
auto with_source(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const InputError& e) {
    const std::string msg = e.what();
    if (msg.rfind(path, 0) == 0) throw;
    throw InputError(path + ": " + msg);
  }
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError("cannot parse number '" + tok + "'");
    }
  }
  return out;
}

std::vector<fs::path> subject_files(const std::string& dir) {
  if (!fs::is_directory(dir)) throw InputError(dir + ": not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension().string();
    if (ext == ".json" || ext == ".csv") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw InputError(dir + ": no .json or .csv subject files");
  return files;
}

/// Precision estimate file (.json) or a square matrix (.csv).
Matrix subject_matrix(const fs::path& path) {
  if (path.extension() == ".json") return io::load_fit(path.string()).omega;
  Matrix m = io::read_csv_matrix(path.string()).values;
  if (m.rows() != m.cols()) throw InputError(path.string() + ": matrix is not square");
  return m;
}

/// Upper-triangle FC vector: partial correlations for estimate files, raw entries for CSV matrices.
Vector subject_fc(const fs::path& path) {
  if (path.extension() == ".json") return flatten_upper(partial_correlation(io::load_fit(path.string()).omega));
  return flatten_upper(subject_matrix(path));
}

Matrix stack_group(const std::string& dir, std::size_t& m_expected) {
  const auto files = subject_files(dir);
  Matrix g;
  for (std::size_t i = 0; i < files.size(); ++i) {
    const Vector v = with_source(files[i].string(), [&] { return subject_fc(files[i]); });
    if (m_expected == 0) m_expected = static_cast<std::size_t>(v.size());
    if (static_cast<std::size_t>(v.size()) != m_expected) {
      throw InputError(files[i].string() + ": edge dimension " + std::to_string(v.size()) + " differs from " +
                       std::to_string(m_expected));
    }
    if (g.size() == 0) g.resize(static_cast<Eigen::Index>(files.size()), v.size());
    g.row(static_cast<Eigen::Index>(i)) = v.transpose();
  }
  return g;
}

void emit_warnings(const std::vector<std::string>& ws, bool verbose, std::ostream& err) {
  if (!verbose) return;
  for (const auto& w : ws) err << "warning: " << w << "\n";
}

// ---------------------------------------------------------------- estimate

struct EstimateArgs {
  Common c;
  std::string ts, sc, config, nu, mode;
  bool save_path = false;
};

int cmd_estimate(const EstimateArgs& a, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  estimator::FitConfig cfg;
  if (!a.config.empty()) cfg = with_source(a.config, [&] { return io::fit_config_from_json(io::read_json(a.config)); });
  if (!a.nu.empty()) cfg.nu = parse_list(a.nu);
  if (!a.mode.empty()) cfg.mode = estimator::fit_mode_from_string(a.mode);
  if (a.c.seed_set) cfg.seed = a.c.seed;
  cfg.validate();

  const io::CsvMatrix ts = io::read_csv_matrix(a.ts);
  const TimeSeriesData y = with_source(a.ts, [&] { return TimeSeriesData(ts.values, ts.header); });
  const int p = y.n_regions();
  std::vector<std::string> extra_warnings;
  StructuralPrior prior = StructuralPrior::zeros(p);
  if (a.sc.empty()) {
    if (cfg.mode != estimator::FitMode::eta_zero) {
      extra_warnings.emplace_back("no structural prior given; using eta_zero mode");
    }
    cfg.mode = estimator::FitMode::eta_zero;
  } else {
    const Matrix pm = io::read_csv_matrix(a.sc).values;
    if (pm.rows() != p || pm.cols() != p) {
      throw InputError(a.sc + ": structural prior is " + std::to_string(pm.rows()) + "x" + std::to_string(pm.cols()) +
                       " but the time series has " + std::to_string(p) + " regions");
    }
    prior = with_source(a.sc, [&] { return StructuralPrior(pm); });
  }
  const SampleCovariance s = sample_covariance(y);

  io::FitRecord rec{estimator::FitResult{PrecisionEstimate(Matrix::Identity(p, p)), {}, {}, 0, false, 0,
                                         cfg.mode, 0, {}},
                    y.region_labels(), {}, {}, {}, 0, io::to_json(cfg)};
  if (cfg.nu.size() == 1) {
    rec.fit = estimator::fit(s, prior, cfg);
    rec.nu_grid = cfg.nu;
    rec.bic_path = {rec.fit.bic};
    rec.edge_path = {rec.fit.omega.edges()};
  } else {
    auto path = estimator::fit_path(s, prior, cfg);
    rec.nu_grid = path.nu;
    for (const auto& f : path.fits) {
      rec.bic_path.push_back(f.bic);
      rec.edge_path.push_back(f.omega.edges());
    }
    rec.fit = std::move(path.fits[path.selected]);
    rec.fit.warnings.insert(rec.fit.warnings.end(), path.warnings.begin(), path.warnings.end());
  }
  rec.fit.warnings.insert(rec.fit.warnings.begin(), extra_warnings.begin(), extra_warnings.end());
  if (rec.labels.empty()) {
    for (int i = 0; i < p; ++i) rec.labels.push_back("R" + std::to_string(i + 1));
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  io::write_atomic(a.c.out, io::to_json(rec, a.save_path).dump(2) + "\n");

  emit_warnings(rec.fit.warnings, a.c.verbose, err);
  out << "estimate: p=" << p << " nu=" << rec.fit.state.nu << " edges=" << rec.fit.omega.edges().size()
      << " bic=" << rec.fit.bic << " iterations=" << rec.fit.n_iter << (rec.fit.converged ? "" : " (not converged)")
      << " -> " << a.c.out << "\n";
  return kOk;
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
  Common c;
  std::string structure = "er", scenario = "MI";
  int p = 100, n_time = 200;
  double misspec = 0.10;
  sim::GraphTopology topo;
  bool verify = false;
};

int cmd_simulate(SimulateArgs a, std::ostream& out, std::ostream& err) {
  a.topo.kind = sim::topology_from_string(a.structure);
  a.topo.p = a.p;
  sim::ScSpec spec;
  spec.scenario = sim::scenario_from_string(a.scenario);
  spec.misspec_frac = a.misspec;
  const auto gt = sim::make_ground_truth(a.topo, spec, a.n_time, a.c.seed);
  io::write_bundle(a.c.out, gt, a.topo, spec, a.n_time);
  out << "simulate: " << sim::to_string(a.topo.kind) << " p=" << a.p << " edges=" << gt.graph.size() << " -> "
      << a.c.out << "\n";
  if (a.verify) {
    const auto problems = sim::verify(gt, spec.misspec_frac);
    for (const auto& pr : problems) err << "verify: " << pr << "\n";
    if (!problems.empty()) return kInternal;
    out << "verify: ok\n";
  }
  return kOk;
}

// ---------------------------------------------------------------- bench

struct BenchArgs {
  Common c;
  std::string config, sweep, import, export_dir;
  bool no_timing = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  bench::BenchmarkConfig cfg;
  if (!a.config.empty()) cfg = with_source(a.config, [&] { return bench::config_from_json(io::read_json(a.config)); });
  if (a.c.seed_set) cfg.master_seed = a.c.seed;

  if (!a.export_dir.empty()) {
    bench::export_bundles(cfg, a.export_dir);
    out << "bench: bundles written below " << a.export_dir << "\n";
    if (a.c.out.empty()) return kOk;
  }
  if (a.c.out.empty()) throw InputError("bench needs --out");

  if (!a.import.empty()) {
    const Json manifest = io::read_json(a.import);
    bench::BenchmarkReport rep;
    rep.config = cfg;
    rep.rows = with_source(a.import, [&] {
      return bench::score_imports(cfg, manifest, fs::path(a.import).parent_path().string());
    });
    io::write_atomic(a.c.out, bench::to_json(rep, !a.no_timing).dump(2) + "\n");
    out << bench::render_table(rep);
    return kOk;
  }

  if (!a.sweep.empty()) {
    const auto grid = bench::parse_sweep(a.sweep);
    const sim::Scenario base = cfg.scenarios.front().scenario;
    cfg.scenarios.clear();
    for (double m : grid) cfg.scenarios.push_back({base, m});
  }
  const int threads = bench::thread_budget();
  if (a.c.verbose) err << "bench: " << threads << " thread(s)\n";
  const auto rep = bench::run_benchmark(cfg, threads);
  if (a.c.verbose) {
    for (const auto& r : rep.rows)
      for (const auto& e : r.errors) err << "bench: " << r.method << " " << r.scenario.label() << ": " << e << "\n";
  }
  if (!a.sweep.empty()) {
    io::write_atomic(a.c.out, bench::sweep_csv(rep));
  } else {
    io::write_atomic(a.c.out, bench::to_json(rep, !a.no_timing).dump(2) + "\n");
    io::write_atomic(a.c.out + ".txt", bench::render_table(rep));
  }
  out << bench::render_table(rep);
  return kOk;
}

// ---------------------------------------------------------------- metrics

struct MetricsArgs {
  Common c;
  std::string fit, truth;
};

int cmd_metrics(const MetricsArgs& a, std::ostream& out, std::ostream&) {
  std::string truth_path = a.truth;
  if (fs::is_directory(truth_path)) truth_path = (fs::path(truth_path) / "omega_true.csv").string();
  const Matrix truth = io::read_csv_matrix(truth_path).values;
  if (truth.rows() != truth.cols()) throw InputError(truth_path + ": matrix is not square");
  const int p = static_cast<int>(truth.rows());

  Matrix est;
  std::vector<EdgeSet> path;
  if (fs::path(a.fit).extension() == ".json") {
    auto lf = io::load_fit(a.fit);
    est = std::move(lf.omega);
    path = std::move(lf.edge_path);
  } else {
    est = io::read_csv_matrix(a.fit).values;
  }
  if (est.rows() != p || est.cols() != p) throw InputError(a.fit + ": dimension differs from " + truth_path);

  const EdgeSet true_edges = support(truth);
  const EdgeSet est_edges = support(est);
  const auto c = metrics::confusion(est_edges, true_edges, p);
  const double eg_est = metrics::global_efficiency(est_edges, p);
  const double eg_true = metrics::global_efficiency(true_edges, p);
  const auto gs = metrics::graph_summaries(est_edges, p);

  Json j;
  j["format_version"] = io::kFormatVersion;
  j["p"] = p;
  j["tp"] = c.tp;
  j["tn"] = c.tn;
  j["fp"] = c.fp;
  j["fn"] = c.fn;
  j["sensitivity"] = c.sensitivity();
  j["specificity"] = c.specificity();
  j["mcc"] = metrics::mcc(c);
  j["auc"] = metrics::auc(path.empty() ? std::vector<EdgeSet>{est_edges} : path, true_edges, p);
  j["auc_points"] = path.empty() ? 1 : path.size();
  j["rel_l1"] = metrics::rel_l1_error(est, truth);
  j["global_efficiency"] = eg_est;
  j["global_efficiency_true"] = eg_true;
  j["eglob_bias"] = eg_est - eg_true;
  j["clustering"] = gs.clustering;
  j["char_path_length"] = gs.char_path_length;
  j["disconnected_pairs"] = gs.disconnected_pairs;
  j["local_efficiency"] = gs.local_efficiency;
  j["mean_degree"] = gs.mean_degree;
  const std::string text = j.dump(2) + "\n";
  if (!a.c.out.empty()) io::write_atomic(a.c.out, text);
  out << text;
  return kOk;
}

// ---------------------------------------------------------------- icc

struct IccArgs {
  Common c;
  std::string session1, session2;
  bool shuffle = false;
};

int cmd_icc(const IccArgs& a, std::ostream& out, std::ostream&) {
  const auto f1 = subject_files(a.session1), f2 = subject_files(a.session2);
  std::map<std::string, fs::path> s1, s2;
  for (const auto& f : f1) s1[f.filename().string()] = f;
  for (const auto& f : f2) s2[f.filename().string()] = f;
  std::vector<std::string> unmatched;
  for (const auto& [n, _] : s1)
    if (!s2.count(n)) unmatched.push_back(a.session1 + "/" + n);
  for (const auto& [n, _] : s2)
    if (!s1.count(n)) unmatched.push_back(a.session2 + "/" + n);
  if (!unmatched.empty()) {
    std::string msg = "unmatched subjects:";
    for (const auto& u : unmatched) msg += " " + u;
    throw InputError(msg);
  }
  std::vector<std::string> names;
  for (const auto& [n, _] : s1) names.push_back(n);
  const auto n = static_cast<Eigen::Index>(names.size());
  if (n < 2) throw InputError("icc needs at least 2 subjects");

  std::vector<std::size_t> pair2(names.size());
  std::iota(pair2.begin(), pair2.end(), 0);
  if (a.shuffle) {
    Rng rng(a.c.seed);
    std::shuffle(pair2.begin(), pair2.end(), rng);
  }

  const std::vector<std::string> metric_names{"clustering", "char_path_length", "local_efficiency",
                                              "global_efficiency", "mean_degree"};
  std::vector<Matrix> tables(metric_names.size(), Matrix(n, 2));
  auto summaries = [](const fs::path& f) {
    const Matrix m = with_source(f.string(), [&] { return subject_matrix(f); });
    const auto g = metrics::graph_summaries(support(m), static_cast<int>(m.rows()));
    return std::vector<double>{g.clustering, g.char_path_length, g.local_efficiency, g.global_efficiency,
                               g.mean_degree};
  };
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto v1 = summaries(s1[names[static_cast<std::size_t>(i)]]);
    const auto v2 = summaries(s2[names[pair2[static_cast<std::size_t>(i)]]]);
    for (std::size_t k = 0; k < metric_names.size(); ++k) {
      tables[k](i, 0) = v1[k];
      tables[k](i, 1) = v2[k];
    }
  }

  Json j;
  j["format_version"] = io::kFormatVersion;
  j["n_subjects"] = n;
  j["shuffled_pairing"] = a.shuffle;
  j["metrics"] = Json::array();
  std::ostringstream table;
  table << std::left << std::setw(20) << "metric" << std::setw(10) << "icc" << std::setw(14) << "label"
        << "n_subjects\n";
  for (std::size_t k = 0; k < metric_names.size(); ++k) {
    const auto icc = metrics::icc31(tables[k]);
    Json row;
    row["metric"] = metric_names[k];
    row["icc"] = icc ? Json(*icc) : Json(nullptr);
    row["label"] = icc ? metrics::icc_label(*icc) : "undefined";
    row["n_subjects"] = n;
    j["metrics"].push_back(row);
    std::ostringstream v;
    if (icc) v << std::fixed << std::setprecision(3) << *icc; else v << "NA";
    table << std::left << std::setw(20) << metric_names[k] << std::setw(10) << v.str() << std::setw(14)
          << row["label"].get<std::string>() << n << "\n";
  }
  if (!a.c.out.empty()) io::write_atomic(a.c.out, j.dump(2) + "\n");
  out << table.str();
  return kOk;
}

// ---------------------------------------------------------------- dwe

struct DweArgs {
  Common c;
  std::string group_a, group_b, modules;
  int n_perm = 5000;
  double fdr = 0.05;
};

int cmd_dwe(const DweArgs& a, std::ostream& out, std::ostream& err) {
  std::size_t m = 0;
  const Matrix ga = stack_group(a.group_a, m);
  const Matrix gb = stack_group(a.group_b, m);
  const int p = nodes_for_pair_count(m);

  std::vector<std::string> labels;
  const auto first = subject_files(a.group_a).front();
  if (first.extension() == ".json") labels = io::load_fit(first.string()).labels;
  const auto modules = io::read_modules(a.modules, labels, p);

  const auto res = metrics::dwe_test(ga, gb, a.n_perm, a.fdr, a.c.seed);
  emit_warnings(res.warnings, true, err);
  const auto blocks = metrics::module_chi_square(res.significant, modules, a.n_perm, derive_seed(a.c.seed, 1));

  Json j;
  j["format_version"] = io::kFormatVersion;
  j["p"] = p;
  j["n_edges"] = m;
  j["n_subjects_a"] = ga.rows();
  j["n_subjects_b"] = gb.rows();
  j["n_perm"] = a.n_perm;
  j["fdr_q"] = a.fdr;
  std::int64_t total = 0;
  Json dwe = Json::array();
  std::size_t idx = 0;
  for (int jn = 0; jn < p; ++jn) {
    for (int k = jn + 1; k < p; ++k, ++idx) {
      if (!res.significant[idx]) continue;
      ++total;
      dwe.push_back({{"j", jn}, {"k", k}, {"statistic", res.statistic[idx]}, {"p_value", res.p_value[idx]}});
    }
  }
  j["n_dwe"] = total;
  j["dwe"] = dwe;
  j["blocks"] = Json::array();
  for (const auto& b : blocks) {
    j["blocks"].push_back({{"g1", b.g1},
                           {"g2", b.g2},
                           {"q", b.q},
                           {"expected", b.expected},
                           {"chi2", b.chi2},
                           {"p_value", b.p_value},
                           {"degenerate", b.degenerate}});
  }
  if (!a.c.out.empty()) io::write_atomic(a.c.out, j.dump(2) + "\n");

  const int g = modules.n_modules();
  out << "DWE counts by module block (" << total << " total)\n";
  for (int g1 = 1; g1 <= g; ++g1) {
    out << std::setw(4) << g1;
    for (int g2 = 1; g2 <= g1; ++g2) {
      const auto& b = blocks[static_cast<std::size_t>((g1 - 1) * g1 / 2 + (g2 - 1))];
      out << std::setw(8) << b.q << (b.p_value < 0.05 && !b.degenerate ? "*" : " ");
    }
    out << "\n";
  }
  out << "    ";
  for (int g2 = 1; g2 <= g; ++g2) out << std::setw(8) << g2 << " ";
  out << "\n* block permutation p < 0.05\n";
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"siggm: structurally informed Gaussian graphical models"};
  app.require_subcommand(1);

  EstimateArgs est;
  auto* c_est = app.add_subcommand("estimate", "Fit a precision matrix from a time series");
  c_est->add_option("--ts", est.ts, "Time series CSV (rows = time points)")->required();
  c_est->add_option("--sc", est.sc, "Structural connectivity CSV (p x p, values in [0,1])");
  c_est->add_option("--config", est.config, "FitConfig JSON");
  c_est->add_option("--nu", est.nu, "Sparsity tuner(s), comma separated; default grid when omitted");
  c_est->add_option("--mode", est.mode, "full | eta_zero | parametric_baseline");
  c_est->add_flag("--save-path", est.save_path, "Store the edge set of every grid value");
  add_common(c_est, est.c, true);

  SimulateArgs simu;
  auto* c_sim = app.add_subcommand("simulate", "Write a synthetic ground-truth bundle");
  c_sim->add_option("--structure", simu.structure, "er | sw | sf");
  c_sim->add_option("--p", simu.p, "Number of nodes");
  c_sim->add_option("-T,--T", simu.n_time, "Number of time points");
  c_sim->add_option("--scenario", simu.scenario, "MI | MII");
  c_sim->add_option("--misspec", simu.misspec, "Fraction of non-edges given nonzero SC");
  c_sim->add_option("--er-prob", simu.topo.er_prob, "Edge probability (er)");
  c_sim->add_option("--sw-neighbors", simu.topo.sw_neighbors, "Lattice neighbours per side (sw)");
  c_sim->add_option("--sw-rewire", simu.topo.sw_rewire, "Rewiring probability (sw)");
  c_sim->add_option("--sf-attach", simu.topo.sf_attach, "Edges per new node (sf)");
  c_sim->add_flag("--verify", simu.verify, "Check the bundle invariants");
  add_common(c_sim, simu.c, true);

  BenchArgs ben;
  auto* c_bench = app.add_subcommand("bench", "Benchmark methods on simulated replicates");
  c_bench->add_option("--config", ben.config, "BenchmarkConfig JSON");
  c_bench->add_option("--sweep-misspec", ben.sweep, "start:stop:step; writes a CSV curve");
  c_bench->add_option("--import", ben.import, "Manifest of external results to score");
  c_bench->add_option("--export-bundles", ben.export_dir, "Write the replicate data below this directory");
  c_bench->add_flag("--no-timing", ben.no_timing, "Leave runtimes out of the JSON report");
  add_common(c_bench, ben.c, false);

  MetricsArgs met;
  auto* c_met = app.add_subcommand("metrics", "Score an estimate against a ground truth");
  c_met->add_option("--fit", met.fit, "Estimate JSON or precision CSV")->required();
  c_met->add_option("--truth", met.truth, "omega_true.csv or a bundle directory")->required();
  add_common(c_met, met.c, false);

  IccArgs icc;
  auto* c_icc = app.add_subcommand("icc", "Test-retest reliability of graph summaries");
  c_icc->add_option("--session1", icc.session1, "Directory of per-subject estimates")->required();
  c_icc->add_option("--session2", icc.session2, "Directory with the same subject file names")->required();
  c_icc->add_flag("--shuffle-pairing", icc.shuffle, "Pair subjects at random across sessions");
  add_common(c_icc, icc.c, false);

  DweArgs dw;
  auto* c_dwe = app.add_subcommand("dwe", "Differentially weighted edges and module block table");
  c_dwe->add_option("--group-a", dw.group_a, "Directory of group A subjects")->required();
  c_dwe->add_option("--group-b", dw.group_b, "Directory of group B subjects")->required();
  c_dwe->add_option("--modules", dw.modules, "CSV of node_label,module_id")->required();
  c_dwe->add_option("--n-perm", dw.n_perm, "Permutations");
  c_dwe->add_option("--fdr", dw.fdr, "Benjamini-Hochberg level");
  add_common(c_dwe, dw.c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*c_est) return cmd_estimate(est, out, err);
    if (*c_sim) return cmd_simulate(simu, out, err);
    if (*c_bench) return cmd_bench(ben, out, err);
    if (*c_met) return cmd_metrics(met, out, err);
    if (*c_icc) return cmd_icc(icc, out, err);
    if (*c_dwe) return cmd_dwe(dw, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kInternal;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("siggm");
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace siggm::cli
