#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siggm/io.hpp"

namespace siggm::bench {

enum class Method { siggm, siggm_eta0, glasso, parametric_baseline };

std::string to_string(Method m);
Method method_from_string(const std::string& name);

struct ScenarioSpec {
  sim::Scenario scenario = sim::Scenario::MI;
  double misspec_frac = 0.10;

  /// "MI(a)" / "MII(b)" for the two standard levels, "MI@0.35" otherwise.
  std::string label() const;
};

struct BenchmarkConfig {
  std::vector<sim::Topology> structures{sim::Topology::small_world};
  std::vector<int> p_values{100};
  std::vector<ScenarioSpec> scenarios{ScenarioSpec{}};
  int n_time = 200;
  int n_replicates = 10;
  std::vector<Method> methods{Method::siggm, Method::siggm_eta0, Method::glasso, Method::parametric_baseline};
  std::uint64_t master_seed = 0;
  int nu_grid_size = 20;
  /// Generator parameters other than kind/p/seed are taken from here.
  sim::GraphTopology topology;

  void validate() const;
};

BenchmarkConfig config_from_json(const io::Json& doc);
io::Json to_json(const BenchmarkConfig& cfg);

/// Seed of the replicate data for one cell; depends on the cell's content, not its position.
std::uint64_t replicate_seed(std::uint64_t master, sim::Topology kind, int p, const ScenarioSpec& sc, int replicate);

sim::GroundTruth replicate_data(const BenchmarkConfig& cfg, sim::Topology kind, int p, const ScenarioSpec& sc,
                                int replicate);

struct MethodRun {
  PrecisionEstimate selected;
  std::vector<EdgeSet> path;
  double seconds = 0;
};

MethodRun run_method(Method m, const SampleCovariance& s, const StructuralPrior& prior, int grid_size,
                     std::uint64_t seed);

struct ReplicateScore {
  double eglob_bias = 0, mcc = 0, auc = 0, l1 = 0, runtime = 0;
};

ReplicateScore score(const PrecisionEstimate& selected, const std::vector<EdgeSet>& path, double seconds,
                     const sim::GroundTruth& truth);

struct Summary {
  double mean = 0;
  double se = 0;  // NaN with fewer than two replicates
};

Summary summarize(const std::vector<double>& xs);

struct BenchmarkRow {
  std::string method;
  sim::Topology structure = sim::Topology::small_world;
  ScenarioSpec scenario;
  int p = 0;
  int n_ok = 0;
  int n_failed = 0;
  bool partial = false;
  Summary eglob_bias, mcc, auc, l1, runtime;
  std::vector<std::string> errors;
};

struct BenchmarkReport {
  BenchmarkConfig config;
  std::vector<BenchmarkRow> rows;
};

/// SIGGM_THREADS when set and positive, otherwise the hardware concurrency.
int thread_budget();

BenchmarkReport run_benchmark(const BenchmarkConfig& cfg, int threads);

/// Scores external results listed in an import manifest against regenerated ground truth.
std::vector<BenchmarkRow> score_imports(const BenchmarkConfig& cfg, const io::Json& manifest,
                                        const std::string& base_dir);

/// Writes every replicate bundle of `cfg` below `dir` (one subdirectory per cell and replicate).
void export_bundles(const BenchmarkConfig& cfg, const std::string& dir);

io::Json to_json(const BenchmarkReport& report, bool include_timing = true);
std::string render_table(const BenchmarkReport& report);
std::string sweep_csv(const BenchmarkReport& report);

/// "start:stop:step", inclusive of stop within rounding.
std::vector<double> parse_sweep(const std::string& spec);

/// Spearman rank correlation (average ranks for ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace siggm::bench
