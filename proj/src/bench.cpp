#include "siggm/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>
#include <tuple>

#include "siggm/rng.hpp"

namespace siggm::bench {

namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

io::Json number_or_null(double v) { return std::isfinite(v) ? io::Json(v) : io::Json(nullptr); }

io::Json summary_json(const Summary& s) { return {{"mean", number_or_null(s.mean)}, {"se", number_or_null(s.se)}}; }

std::vector<double> glasso_grid(const SampleCovariance& s, int n) {
  const Matrix& sm = s.matrix();
  double smax = 0.0;
  for (int j = 0; j < s.dim(); ++j)
    for (int k = j + 1; k < s.dim(); ++k) smax = std::max(smax, std::abs(sm(j, k)));
  if (smax <= 0.0) smax = 1e-3;
  std::vector<double> grid(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) grid[static_cast<std::size_t>(i)] = smax * std::pow(0.01, n > 1 ? double(i) / (n - 1) : 0.0);
  return grid;  // descending
}

struct Cell {
  sim::Topology kind;
  int p;
  ScenarioSpec scenario;
};

std::vector<Cell> cells_of(const BenchmarkConfig& cfg) {
  std::vector<Cell> cells;
  for (auto kind : cfg.structures)
    for (int p : cfg.p_values)
      for (const auto& sc : cfg.scenarios) cells.push_back({kind, p, sc});
  return cells;
}

struct Outcome {
  bool ok = false;
  ReplicateScore score;
  std::string error;
};

BenchmarkRow aggregate(const std::string& method, const Cell& cell, const std::vector<Outcome>& outcomes) {
  BenchmarkRow row;
  row.method = method;
  row.structure = cell.kind;
  row.scenario = cell.scenario;
  row.p = cell.p;
  std::vector<double> eg, mc, au, l1, rt;
  for (const Outcome& o : outcomes) {
    if (!o.ok) {
      ++row.n_failed;
      row.errors.push_back(o.error);
      continue;
    }
    ++row.n_ok;
    eg.push_back(o.score.eglob_bias);
    mc.push_back(o.score.mcc);
    au.push_back(o.score.auc);
    l1.push_back(o.score.l1);
    rt.push_back(o.score.runtime);
  }
  row.partial = row.n_failed > 0;
  row.eglob_bias = summarize(eg);
  row.mcc = summarize(mc);
  row.auc = summarize(au);
  row.l1 = summarize(l1);
  row.runtime = summarize(rt);
  return row;
}

std::string cell_dir_name(const Cell& c) {
  std::ostringstream s;
  s << sim::to_string(c.kind) << "_p" << c.p << "_" << sim::to_string(c.scenario.scenario) << "_"
    << std::fixed << std::setprecision(3) << c.scenario.misspec_frac;
  return s.str();
}

}  // namespace

std::string to_string(Method m) {
  switch (m) {
    case Method::siggm: return "siggm";
    case Method::siggm_eta0: return "siggm_eta0";
    case Method::glasso: return "glasso";
    case Method::parametric_baseline: return "parametric_baseline";
  }
  return "?";
}

Method method_from_string(const std::string& name) {
  if (name == "siggm") return Method::siggm;
  if (name == "siggm_eta0") return Method::siggm_eta0;
  if (name == "glasso") return Method::glasso;
  if (name == "parametric_baseline") return Method::parametric_baseline;
  throw InputError("unknown method '" + name + "'");
}

std::string ScenarioSpec::label() const {
  const std::string base = sim::to_string(scenario);
  if (std::abs(misspec_frac - 0.10) < 1e-12) return base + "(a)";
  if (std::abs(misspec_frac - 0.20) < 1e-12) return base + "(b)";
  std::ostringstream s;
  s << base << "@" << misspec_frac;
  return s.str();
}

void BenchmarkConfig::validate() const {
  if (structures.empty()) throw InputError("benchmark needs at least one structure");
  if (p_values.empty()) throw InputError("benchmark needs at least one p");
  for (int p : p_values)
    if (p < 3) throw InputError("benchmark p must be >= 3");
  if (scenarios.empty()) throw InputError("benchmark needs at least one scenario");
  for (const auto& s : scenarios)
    if (!(s.misspec_frac >= 0 && s.misspec_frac <= 1)) throw InputError("misspec must lie in [0,1]");
  if (n_time < 2) throw InputError("benchmark T must be >= 2");
  if (n_replicates < 1) throw InputError("n_replicates must be >= 1");
  if (methods.empty()) throw InputError("benchmark needs at least one method");
  if (nu_grid_size < 2) throw InputError("nu grid needs at least 2 values");
}

BenchmarkConfig config_from_json(const io::Json& doc) {
  if (!doc.is_object()) throw InputError("benchmark config must be a JSON object");
  BenchmarkConfig cfg;
  try {
    if (doc.contains("structures")) {
      cfg.structures.clear();
      for (const auto& s : doc["structures"]) cfg.structures.push_back(sim::topology_from_string(s.get<std::string>()));
    }
    if (doc.contains("p_values")) cfg.p_values = doc["p_values"].get<std::vector<int>>();
    if (doc.contains("scenarios")) {
      cfg.scenarios.clear();
      for (const auto& s : doc["scenarios"]) {
        ScenarioSpec sc;
        sc.scenario = sim::scenario_from_string(s.at("scenario").get<std::string>());
        sc.misspec_frac = s.at("misspec").get<double>();
        cfg.scenarios.push_back(sc);
      }
    }
    if (doc.contains("T")) cfg.n_time = doc["T"].get<int>();
    if (doc.contains("n_replicates")) cfg.n_replicates = doc["n_replicates"].get<int>();
    if (doc.contains("methods")) {
      cfg.methods.clear();
      for (const auto& m : doc["methods"]) cfg.methods.push_back(method_from_string(m.get<std::string>()));
    }
    if (doc.contains("master_seed")) cfg.master_seed = doc["master_seed"].get<std::uint64_t>();
    if (doc.contains("nu_grid_size")) cfg.nu_grid_size = doc["nu_grid_size"].get<int>();
    if (doc.contains("er_prob")) cfg.topology.er_prob = doc["er_prob"].get<double>();
    if (doc.contains("sw_neighbors")) cfg.topology.sw_neighbors = doc["sw_neighbors"].get<int>();
    if (doc.contains("sw_rewire")) cfg.topology.sw_rewire = doc["sw_rewire"].get<double>();
    if (doc.contains("sf_attach")) cfg.topology.sf_attach = doc["sf_attach"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("benchmark config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

io::Json to_json(const BenchmarkConfig& cfg) {
  io::Json j;
  j["structures"] = io::Json::array();
  for (auto s : cfg.structures) j["structures"].push_back(sim::to_string(s));
  j["p_values"] = cfg.p_values;
  j["scenarios"] = io::Json::array();
  for (const auto& s : cfg.scenarios)
    j["scenarios"].push_back({{"scenario", sim::to_string(s.scenario)}, {"misspec", s.misspec_frac}});
  j["T"] = cfg.n_time;
  j["n_replicates"] = cfg.n_replicates;
  j["methods"] = io::Json::array();
  for (auto m : cfg.methods) j["methods"].push_back(to_string(m));
  j["master_seed"] = cfg.master_seed;
  j["nu_grid_size"] = cfg.nu_grid_size;
  j["er_prob"] = cfg.topology.er_prob;
  j["sw_neighbors"] = cfg.topology.sw_neighbors;
  j["sw_rewire"] = cfg.topology.sw_rewire;
  j["sf_attach"] = cfg.topology.sf_attach;
  return j;
}

std::uint64_t replicate_seed(std::uint64_t master, sim::Topology kind, int p, const ScenarioSpec& sc, int replicate) {
  std::uint64_t key = derive_seed(master, static_cast<std::uint64_t>(kind));
  key = derive_seed(key, static_cast<std::uint64_t>(p));
  key = derive_seed(key, static_cast<std::uint64_t>(sc.scenario));
  key = derive_seed(key, static_cast<std::uint64_t>(std::llround(sc.misspec_frac * 1e6)));
  return derive_seed(key, static_cast<std::uint64_t>(replicate));
}

sim::GroundTruth replicate_data(const BenchmarkConfig& cfg, sim::Topology kind, int p, const ScenarioSpec& sc,
                                int replicate) {
  sim::GraphTopology topo = cfg.topology;
  topo.kind = kind;
  topo.p = p;
  sim::ScSpec spec;
  spec.scenario = sc.scenario;
  spec.misspec_frac = sc.misspec_frac;
  return sim::make_ground_truth(topo, spec, cfg.n_time, replicate_seed(cfg.master_seed, kind, p, sc, replicate));
}

MethodRun run_method(Method m, const SampleCovariance& s, const StructuralPrior& prior, int grid_size,
                     std::uint64_t seed) {
  const auto t0 = std::chrono::steady_clock::now();
  MethodRun run{PrecisionEstimate(Matrix::Identity(s.dim(), s.dim())), {}, 0.0};
  if (m == Method::glasso) {
    std::vector<PrecisionEstimate> fits;
    std::vector<double> bics;
    const PrecisionEstimate* warm = nullptr;
    for (double lam : glasso_grid(s, grid_size)) {
      auto sol = wglasso::solve(s, wglasso::PenaltyWeights::uniform(s.dim(), lam, lam), {}, warm);
      bics.push_back(estimator::bic(s, sol.omega));
      fits.push_back(std::move(sol.omega));
      warm = &fits.back();
    }
    // descending lambda: the first minimum is the sparsest
    std::size_t best = 0;
    for (std::size_t i = 1; i < bics.size(); ++i)
      if (bics[i] < bics[best]) best = i;
    for (const auto& f : fits) run.path.push_back(f.edges());
    run.selected = fits[best];
  } else {
    estimator::FitConfig cfg;
    cfg.seed = seed;
    cfg.default_grid_size = grid_size;
    cfg.mode = m == Method::siggm        ? estimator::FitMode::full
               : m == Method::siggm_eta0 ? estimator::FitMode::eta_zero
                                         : estimator::FitMode::parametric_baseline;
    const auto path = estimator::fit_path(s, prior, cfg);
    for (const auto& f : path.fits) run.path.push_back(f.omega.edges());
    run.selected = path.fits[path.selected].omega;
  }
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

ReplicateScore score(const PrecisionEstimate& selected, const std::vector<EdgeSet>& path, double seconds,
                     const sim::GroundTruth& truth) {
  const int p = truth.omega_true.dim();
  if (selected.dim() != p) throw InputError("estimate and truth differ in dimension");
  ReplicateScore r;
  r.eglob_bias = metrics::global_efficiency(selected.edges(), p) - metrics::global_efficiency(truth.graph, p);
  r.mcc = metrics::mcc(metrics::confusion(selected.edges(), truth.graph, p));
  r.auc = metrics::auc(path.empty() ? std::vector<EdgeSet>{selected.edges()} : path, truth.graph, p);
  r.l1 = metrics::rel_l1_error(selected.matrix(), truth.omega_true.matrix());
  r.runtime = seconds;
  return r;
}

Summary summarize(const std::vector<double>& xs) {
  Summary s;
  if (xs.empty()) {
    s.mean = s.se = kNaN;
    return s;
  }
  const double n = static_cast<double>(xs.size());
  s.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  if (xs.size() < 2) {
    s.se = kNaN;
    return s;
  }
  double ss = 0.0;
  for (double x : xs) ss += (x - s.mean) * (x - s.mean);
  s.se = std::sqrt(ss / (n - 1.0) / n);
  return s;
}

int thread_budget() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("SIGGM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 1024));
  }
  return hw;
}

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg, int threads) {
  cfg.validate();
  const auto cells = cells_of(cfg);
  const std::size_t n_rep = static_cast<std::size_t>(cfg.n_replicates);
  const std::size_t n_methods = cfg.methods.size();
  const std::size_t n_tasks = cells.size() * n_rep;

  // outcomes[task][method]; each task writes only its own slot
  std::vector<std::vector<Outcome>> outcomes(n_tasks, std::vector<Outcome>(n_methods));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t t = next++; t < n_tasks; t = next++) {
      const Cell& cell = cells[t / n_rep];
      const int rep = static_cast<int>(t % n_rep);
      std::optional<sim::GroundTruth> gt;
      std::string data_error;
      try {
        gt = replicate_data(cfg, cell.kind, cell.p, cell.scenario, rep);
      } catch (const std::exception& e) {
        data_error = std::string("data generation failed: ") + e.what();
      }
      for (std::size_t mi = 0; mi < n_methods; ++mi) {
        Outcome& o = outcomes[t][mi];
        if (!gt) {
          o.error = "replicate " + std::to_string(rep) + ": " + data_error;
          continue;
        }
        try {
          const SampleCovariance s = sample_covariance(gt->timeseries);
          const auto run = run_method(cfg.methods[mi], s, gt->sc, cfg.nu_grid_size,
                                      derive_seed(gt->seeds.master, 100 + static_cast<std::uint64_t>(cfg.methods[mi])));
          o.score = score(run.selected, run.path, run.seconds, *gt);
          o.ok = true;
        } catch (const std::exception& e) {
          o.error = "replicate " + std::to_string(rep) + ": " + e.what();
        }
      }
    }
  };
  const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(n_tasks)));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BenchmarkReport report;
  report.config = cfg;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (std::size_t mi = 0; mi < n_methods; ++mi) {
      std::vector<Outcome> per_rep;
      for (std::size_t r = 0; r < n_rep; ++r) per_rep.push_back(outcomes[c * n_rep + r][mi]);
      report.rows.push_back(aggregate(to_string(cfg.methods[mi]), cells[c], per_rep));
    }
  }
  return report;
}

std::vector<BenchmarkRow> score_imports(const BenchmarkConfig& cfg, const io::Json& manifest,
                                        const std::string& base_dir) {
  io::check_format_version(manifest, "import manifest");
  if (!manifest.contains("entries") || !manifest["entries"].is_array()) {
    throw InputError("import manifest needs an 'entries' array");
  }
  using Key = std::tuple<std::string, int, int, int, long long>;
  std::map<Key, std::pair<Cell, std::vector<Outcome>>> groups;
  std::vector<Key> order;

  auto resolve = [&](const std::string& f) {
    const fs::path path(f);
    return path.is_absolute() ? path.string() : (fs::path(base_dir) / path).string();
  };

  for (const auto& e : manifest["entries"]) {
    Cell cell{sim::Topology::erdos_renyi, 0, {}};
    std::string method;
    int rep = 0;
    try {
      method = e.at("method").get<std::string>();
      cell.kind = sim::topology_from_string(e.at("structure").get<std::string>());
      cell.p = e.at("p").get<int>();
      cell.scenario.scenario = sim::scenario_from_string(e.at("scenario").get<std::string>());
      cell.scenario.misspec_frac = e.at("misspec").get<double>();
      rep = e.at("replicate").get<int>();
    } catch (const nlohmann::json::exception& ex) {
      throw InputError(std::string("import entry: ") + ex.what());
    }
    const Key key{method, static_cast<int>(cell.kind), cell.p, static_cast<int>(cell.scenario.scenario),
                  std::llround(cell.scenario.misspec_frac * 1e6)};
    auto [it, inserted] = groups.try_emplace(key, cell, std::vector<Outcome>{});
    if (inserted) order.push_back(key);

    Outcome o;
    try {
      const auto gt = replicate_data(cfg, cell.kind, cell.p, cell.scenario, rep);
      const std::string kind = e.value("kind", std::string("precision"));
      const Matrix m = io::read_csv_matrix(resolve(e.at("file").get<std::string>())).values;
      if (m.rows() != cell.p || m.cols() != cell.p) throw InputError("imported matrix is not p x p");
      std::vector<EdgeSet> path;
      if (e.contains("path")) {
        for (const auto& f : e["path"]) path.push_back(support(io::read_csv_matrix(resolve(f.get<std::string>())).values));
      }
      const double seconds = e.value("runtime_seconds", kNaN);
      if (kind == "precision") {
        o.score = score(PrecisionEstimate(m), path, seconds, gt);
      } else if (kind == "adjacency") {
        const EdgeSet edges = support(m);
        o.score.eglob_bias = metrics::global_efficiency(edges, cell.p) - metrics::global_efficiency(gt.graph, cell.p);
        o.score.mcc = metrics::mcc(metrics::confusion(edges, gt.graph, cell.p));
        o.score.auc = metrics::auc(path.empty() ? std::vector<EdgeSet>{edges} : path, gt.graph, cell.p);
        o.score.l1 = kNaN;
        o.score.runtime = seconds;
      } else {
        throw InputError("import kind must be 'precision' or 'adjacency'");
      }
      o.ok = true;
    } catch (const std::exception& ex) {
      o.error = "replicate " + std::to_string(rep) + ": " + ex.what();
    }
    it->second.second.push_back(std::move(o));
  }

  std::vector<BenchmarkRow> rows;
  for (const Key& k : order) {
    const auto& [cell, outs] = groups.at(k);
    rows.push_back(aggregate(std::get<0>(k), cell, outs));
  }
  return rows;
}

void export_bundles(const BenchmarkConfig& cfg, const std::string& dir) {
  cfg.validate();
  for (const Cell& cell : cells_of(cfg)) {
    for (int r = 0; r < cfg.n_replicates; ++r) {
      sim::GraphTopology topo = cfg.topology;
      topo.kind = cell.kind;
      topo.p = cell.p;
      sim::ScSpec spec;
      spec.scenario = cell.scenario.scenario;
      spec.misspec_frac = cell.scenario.misspec_frac;
      const auto gt = replicate_data(cfg, cell.kind, cell.p, cell.scenario, r);
      io::write_bundle((fs::path(dir) / cell_dir_name(cell) / ("rep" + std::to_string(r))).string(), gt, topo, spec,
                       cfg.n_time);
    }
  }
}

io::Json to_json(const BenchmarkReport& report, bool include_timing) {
  io::Json j;
  j["format_version"] = io::kFormatVersion;
  j["config"] = to_json(report.config);
  j["rows"] = io::Json::array();
  for (const auto& r : report.rows) {
    io::Json row;
    row["method"] = r.method;
    row["structure"] = sim::to_string(r.structure);
    row["scenario"] = r.scenario.label();
    row["misspec"] = r.scenario.misspec_frac;
    row["p"] = r.p;
    row["n_ok"] = r.n_ok;
    row["n_failed"] = r.n_failed;
    row["partial"] = r.partial;
    row["eglob_bias"] = summary_json(r.eglob_bias);
    row["mcc"] = summary_json(r.mcc);
    row["auc"] = summary_json(r.auc);
    row["l1"] = summary_json(r.l1);
    if (include_timing) row["runtime_seconds"] = summary_json(r.runtime);
    row["errors"] = r.errors;
    j["rows"].push_back(row);
  }
  return j;
}

std::string render_table(const BenchmarkReport& report) {
  std::ostringstream out;
  auto cell = [](const Summary& s) {
    std::ostringstream c;
    c << std::fixed << std::setprecision(3);
    if (!std::isfinite(s.mean)) {
      c << "-";
    } else {
      c << s.mean;
      if (std::isfinite(s.se)) c << " (" << s.se << ")";
    }
    return c.str();
  };
  out << std::left << std::setw(20) << "method" << std::setw(13) << "structure" << std::setw(11) << "scenario"
      << std::setw(6) << "p" << std::setw(17) << "eglob_bias" << std::setw(17) << "mcc" << std::setw(17) << "auc"
      << std::setw(17) << "l1" << "runtime_s\n";
  for (const auto& r : report.rows) {
    out << std::left << std::setw(20) << (r.method + (r.partial ? "*" : "")) << std::setw(13)
        << sim::to_string(r.structure) << std::setw(11) << r.scenario.label() << std::setw(6) << r.p << std::setw(17)
        << cell(r.eglob_bias) << std::setw(17) << cell(r.mcc) << std::setw(17) << cell(r.auc) << std::setw(17)
        << cell(r.l1) << cell(r.runtime) << "\n";
  }
  bool any_partial = false;
  for (const auto& r : report.rows) any_partial = any_partial || r.partial;
  if (any_partial) out << "* partial cell: some replicates failed\n";
  return out.str();
}

std::string sweep_csv(const BenchmarkReport& report) {
  std::ostringstream out;
  out.precision(10);
  out << "method,structure,p,scenario,misspec,n_ok,n_failed,l1_mean,l1_se,mcc_mean,mcc_se,auc_mean,auc_se,"
         "eglob_bias_mean,eglob_bias_se\n";
  auto num = [](double v) {
    if (!std::isfinite(v)) return std::string();
    std::ostringstream s;
    s.precision(10);
    s << v;
    return s.str();
  };
  for (const auto& r : report.rows) {
    out << r.method << ',' << sim::to_string(r.structure) << ',' << r.p << ',' << sim::to_string(r.scenario.scenario)
        << ',' << r.scenario.misspec_frac << ',' << r.n_ok << ',' << r.n_failed << ',' << num(r.l1.mean) << ','
        << num(r.l1.se) << ',' << num(r.mcc.mean) << ',' << num(r.mcc.se) << ',' << num(r.auc.mean) << ','
        << num(r.auc.se) << ',' << num(r.eglob_bias.mean) << ',' << num(r.eglob_bias.se) << '\n';
  }
  return out.str();
}

std::vector<double> parse_sweep(const std::string& spec) {
  std::vector<double> parts;
  std::istringstream in(spec);
  std::string tok;
  while (std::getline(in, tok, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("sweep spec '" + spec + "' is not start:stop:step");
    }
  }
  if (parts.size() != 3) throw InputError("sweep spec '" + spec + "' is not start:stop:step");
  const double start = parts[0], stop = parts[1], step = parts[2];
  if (!(step > 0) || stop < start || start < 0 || stop > 1) {
    throw InputError("sweep spec needs 0 <= start <= stop <= 1 and step > 0");
  }
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = start + i * step;
    if (v > stop + 1e-9 * step) break;
    out.push_back(std::round(v * 1e9) / 1e9);
  }
  return out;
}

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw InputError("spearman needs two equal-length samples (n >= 2)");
  auto ranks = [](const std::vector<double>& v) {
    std::vector<std::size_t> idx(v.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < idx.size();) {
      std::size_t j = i;
      while (j + 1 < idx.size() && v[idx[j + 1]] == v[idx[i]]) ++j;
      const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
      for (std::size_t t = i; t <= j; ++t) r[idx[t]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rx = ranks(x), ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace siggm::bench
