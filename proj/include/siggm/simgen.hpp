#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "siggm/model_core.hpp"

namespace siggm::sim {

enum class Topology { erdos_renyi, small_world, scale_free };

std::string to_string(Topology t);
/// Accepts "er"/"erdos_renyi", "sw"/"small_world", "sf"/"scale_free".
Topology topology_from_string(const std::string& name);

struct GraphTopology {
  Topology kind = Topology::erdos_renyi;
  int p = 100;
  double er_prob = 0.15;
  int sw_neighbors = 5;  // ring-lattice neighbours on each side
  double sw_rewire = 0.2;
  int sf_attach = 1;  // edges added per new node
  std::uint64_t seed = 0;

  void validate() const;
};

enum class Scenario { MI, MII };

std::string to_string(Scenario s);
Scenario scenario_from_string(const std::string& name);

struct ScSpec {
  Scenario scenario = Scenario::MI;
  /// Fraction of zero-FC pairs that receive SC in (0.3, 1): 0.10 for (a), 0.20 for (b).
  double misspec_frac = 0.10;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SeedRecord {
  std::uint64_t master = 0, graph = 0, precision = 0, sc = 0, timeseries = 0;
};

struct GroundTruth {
  SeedRecord seeds;
  EdgeSet graph;
  PrecisionEstimate omega_true;
  StructuralPrior sc;
  TimeSeriesData timeseries;
};

EdgeSet gen_graph(const GraphTopology& topo);

/// Edge weights ~ Uniform(-1,1), unit diagonal, then shifted so the smallest
/// eigenvalue is at least `eps_pd`.
PrecisionEstimate gen_precision(const EdgeSet& graph, int p, std::uint64_t seed, double eps_pd = 0.1);

enum class FcClass { strong = 0, moderate = 1, weak = 2, none = 3 };
enum class ScClass { strong = 0, moderate = 1, weak = 2, misspecified = 3, zero = 4 };

/// Per-pair bookkeeping of how each SC value was produced (flattened upper order).
struct ScAssignment {
  StructuralPrior sc;
  std::vector<FcClass> fc_class;
  std::vector<ScClass> sc_class;
};

ScAssignment gen_sc_detailed(const PrecisionEstimate& omega_true, const ScSpec& spec);
inline StructuralPrior gen_sc(const PrecisionEstimate& omega_true, const ScSpec& spec) {
  return gen_sc_detailed(omega_true, spec).sc;
}

/// i.i.d. rows y_t ~ N(0, Omega^{-1}).
TimeSeriesData sample_timeseries(const PrecisionEstimate& omega_true, int n_time, std::uint64_t seed);

/// Graph, precision, SC and time series from one master seed; sub-seeds are derived streams.
GroundTruth make_ground_truth(GraphTopology topo, ScSpec spec, int n_time, std::uint64_t master_seed);

/// Invariant violations of a bundle (empty when valid).
std::vector<std::string> verify(const GroundTruth& gt, double misspec_frac);

}  // namespace siggm::sim
