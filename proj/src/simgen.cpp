#include "siggm/simgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <set>

#include "siggm/rng.hpp"

namespace siggm::sim {

namespace {

EdgeSet from_adjacency(const std::vector<std::set<int>>& adj) {
  EdgeSet out;
  for (int j = 0; j < static_cast<int>(adj.size()); ++j)
    for (int k : adj[static_cast<std::size_t>(j)])
      if (k > j) out.push_back({j, k});
  return out;
}

void link(std::vector<std::set<int>>& adj, int a, int b) {
  adj[static_cast<std::size_t>(a)].insert(b);
  adj[static_cast<std::size_t>(b)].insert(a);
}

void unlink(std::vector<std::set<int>>& adj, int a, int b) {
  adj[static_cast<std::size_t>(a)].erase(b);
  adj[static_cast<std::size_t>(b)].erase(a);
}

EdgeSet erdos_renyi(const GraphTopology& t, Rng& rng) {
  std::bernoulli_distribution coin(t.er_prob);
  EdgeSet out;
  for (int j = 0; j < t.p; ++j)
    for (int k = j + 1; k < t.p; ++k)
      if (coin(rng)) out.push_back({j, k});
  return out;
}

EdgeSet watts_strogatz(const GraphTopology& t, Rng& rng) {
  const int p = t.p, k = t.sw_neighbors;
  std::vector<std::set<int>> adj(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i)
    for (int d = 1; d <= k; ++d) link(adj, i, (i + d) % p);

  std::bernoulli_distribution rewire(t.sw_rewire);
  std::uniform_int_distribution<int> node(0, p - 1);
  for (int d = 1; d <= k; ++d) {
    for (int i = 0; i < p; ++i) {
      const int j = (i + d) % p;
      if (!rewire(rng)) continue;
      if (!adj[static_cast<std::size_t>(i)].count(j)) continue;
      if (static_cast<int>(adj[static_cast<std::size_t>(i)].size()) >= p - 1) continue;
      int r;
      do {
        r = node(rng);
      } while (r == i || adj[static_cast<std::size_t>(i)].count(r));
      unlink(adj, i, j);
      link(adj, i, r);
    }
  }
  return from_adjacency(adj);
}

EdgeSet barabasi_albert(const GraphTopology& t, Rng& rng) {
  const int p = t.p, m = t.sf_attach;
  std::vector<std::set<int>> adj(static_cast<std::size_t>(p));
  // seed clique on m+1 nodes
  const int m0 = std::min(p, m + 1);
  for (int a = 0; a < m0; ++a)
    for (int b = a + 1; b < m0; ++b) link(adj, a, b);
  // each node appears once per incident edge end
  std::vector<int> ends;
  for (int a = 0; a < m0; ++a)
    for (std::size_t d = 0; d < adj[static_cast<std::size_t>(a)].size(); ++d) ends.push_back(a);

  for (int v = m0; v < p; ++v) {
    std::set<int> targets;
    while (static_cast<int>(targets.size()) < std::min(m, v)) {
      if (ends.empty()) {
        targets.insert(std::uniform_int_distribution<int>(0, v - 1)(rng));
      } else {
        std::uniform_int_distribution<std::size_t> pick(0, ends.size() - 1);
        targets.insert(ends[pick(rng)]);
      }
    }
    for (int u : targets) {
      link(adj, v, u);
      ends.push_back(u);
      ends.push_back(v);
    }
  }
  return from_adjacency(adj);
}

}  // namespace

std::string to_string(Topology t) {
  switch (t) {
    case Topology::erdos_renyi: return "er";
    case Topology::small_world: return "sw";
    case Topology::scale_free: return "sf";
  }
  return "er";
}

Topology topology_from_string(const std::string& name) {
  if (name == "er" || name == "erdos_renyi") return Topology::erdos_renyi;
  if (name == "sw" || name == "small_world") return Topology::small_world;
  if (name == "sf" || name == "scale_free") return Topology::scale_free;
  throw InputError("unknown network structure '" + name + "'");
}

std::string to_string(Scenario s) { return s == Scenario::MI ? "MI" : "MII"; }

Scenario scenario_from_string(const std::string& name) {
  if (name == "MI") return Scenario::MI;
  if (name == "MII") return Scenario::MII;
  throw InputError("unknown SC scenario '" + name + "'");
}

void GraphTopology::validate() const {
  if (p < 3) throw InputError("graph needs p >= 3");
  if (!(er_prob >= 0 && er_prob <= 1)) throw InputError("er_prob must lie in [0,1]");
  if (kind == Topology::small_world) {
    if (!(sw_rewire >= 0 && sw_rewire <= 1)) throw InputError("sw_rewire must lie in [0,1]");
    if (sw_neighbors < 1 || 2 * sw_neighbors >= p) throw InputError("sw_neighbors must satisfy 1 <= k < p/2");
  }
  if (kind == Topology::scale_free && (sf_attach < 1 || sf_attach >= p)) {
    throw InputError("sf_attach must satisfy 1 <= m < p");
  }
}

void ScSpec::validate() const {
  if (!(misspec_frac >= 0 && misspec_frac <= 1)) throw InputError("misspec_frac must lie in [0,1]");
}

EdgeSet gen_graph(const GraphTopology& topo) {
  topo.validate();
  Rng rng(topo.seed);
  switch (topo.kind) {
    case Topology::erdos_renyi: return erdos_renyi(topo, rng);
    case Topology::small_world: return watts_strogatz(topo, rng);
    case Topology::scale_free: return barabasi_albert(topo, rng);
  }
  return {};
}

PrecisionEstimate gen_precision(const EdgeSet& graph, int p, std::uint64_t seed, double eps_pd) {
  Rng rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Matrix omega = Matrix::Identity(p, p);
  for (const Edge& e : graph) {
    if (e.j < 0 || e.k >= p || e.j >= e.k) throw InputError("edge out of range for p=" + std::to_string(p));
    double v;
    do {
      v = unif(rng);
    } while (std::abs(v) < 1e-6);
    omega(e.j, e.k) = v;
    omega(e.k, e.j) = v;
  }
  const double lambda_min = Eigen::SelfAdjointEigenSolver<Matrix>(omega, Eigen::EigenvaluesOnly).eigenvalues()[0];
  if (lambda_min < eps_pd) omega.diagonal().array() += eps_pd - lambda_min;
  return PrecisionEstimate(std::move(omega));
}

ScAssignment gen_sc_detailed(const PrecisionEstimate& omega_true, const ScSpec& spec) {
  spec.validate();
  const int p = omega_true.dim();
  const EdgeSet& edges = omega_true.edges();
  if (edges.size() < 3) throw InputError("SC generation needs at least 3 true edges");

  Rng rng(spec.seed);
  const Matrix pc = partial_correlation(omega_true);
  const std::size_t m = pair_count(p);
  ScAssignment out{StructuralPrior::zeros(p), std::vector<FcClass>(m, FcClass::none),
                   std::vector<ScClass>(m, ScClass::zero)};
  Matrix sc = Matrix::Zero(p, p);

  // FC terciles by |partial correlation|, strongest first; ties broken by pair order
  std::vector<std::size_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(pc(edges[a].j, edges[a].k)) > std::abs(pc(edges[b].j, edges[b].k));
  });

  const std::array<double, 3> strong_mix =
      spec.scenario == Scenario::MI ? std::array<double, 3>{0.5, 0.25, 0.25} : std::array<double, 3>{0.3, 0.35, 0.35};
  std::discrete_distribution<int> strong_pick(strong_mix.begin(), strong_mix.end());
  auto draw_sc = [&](ScClass c) {
    switch (c) {
      case ScClass::strong: return std::uniform_real_distribution<double>(0.7, 1.0)(rng);
      case ScClass::moderate: return std::uniform_real_distribution<double>(0.3, 0.7)(rng);
      case ScClass::weak: return std::uniform_real_distribution<double>(0.0, 0.3)(rng);
      case ScClass::misspecified: return std::uniform_real_distribution<double>(0.3, 1.0)(rng);
      case ScClass::zero: return 0.0;
    }
    return 0.0;
  };

  const std::size_t n_edges = edges.size();
  for (std::size_t rank = 0; rank < n_edges; ++rank) {
    const Edge& e = edges[order[rank]];
    const auto fc = static_cast<FcClass>((3 * rank) / n_edges);
    ScClass cls;
    if (fc == FcClass::strong) {
      cls = static_cast<ScClass>(strong_pick(rng));
    } else if (fc == FcClass::moderate) {
      cls = ScClass::moderate;
    } else {
      cls = ScClass::weak;
    }
    const double v = draw_sc(cls);
    sc(e.j, e.k) = v;
    sc(e.k, e.j) = v;
    const std::size_t idx = pair_index(e.j, e.k, p);
    out.fc_class[idx] = fc;
    out.sc_class[idx] = cls;
  }

  // mis-specified non-edges: an exact share of the zero-FC pairs
  std::vector<std::size_t> non_edges;
  for (std::size_t i = 0; i < m; ++i)
    if (out.fc_class[i] == FcClass::none) non_edges.push_back(i);
  const auto n_mis = static_cast<std::size_t>(std::llround(spec.misspec_frac * static_cast<double>(non_edges.size())));
  std::shuffle(non_edges.begin(), non_edges.end(), rng);
  std::sort(non_edges.begin(), non_edges.begin() + static_cast<std::ptrdiff_t>(n_mis));
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(m);
  for (int j = 0; j < p; ++j)
    for (int k = j + 1; k < p; ++k) pairs.emplace_back(j, k);
  for (std::size_t t = 0; t < n_mis; ++t) {
    const std::size_t idx = non_edges[t];
    double v;
    do {
      v = draw_sc(ScClass::misspecified);
    } while (v <= 0.3);
    const auto [j, k] = pairs[idx];
    sc(j, k) = v;
    sc(k, j) = v;
    out.sc_class[idx] = ScClass::misspecified;
  }
  out.sc = StructuralPrior(std::move(sc));
  return out;
}

TimeSeriesData sample_timeseries(const PrecisionEstimate& omega_true, int n_time, std::uint64_t seed) {
  if (n_time < 2) throw InputError("need at least 2 time points");
  const int p = omega_true.dim();
  const Matrix cov = omega_true.matrix().llt().solve(Matrix::Identity(p, p));
  Eigen::LLT<Matrix> llt(0.5 * (cov + cov.transpose()));
  if (llt.info() != Eigen::Success) throw InvariantError("covariance of a PD precision failed Cholesky");
  const Matrix l = llt.matrixL();

  Rng rng(seed);
  std::normal_distribution<double> z(0.0, 1.0);
  Matrix draws(n_time, p);
  for (int t = 0; t < n_time; ++t)
    for (int j = 0; j < p; ++j) draws(t, j) = z(rng);
  return TimeSeriesData(draws * l.transpose());
}

GroundTruth make_ground_truth(GraphTopology topo, ScSpec spec, int n_time, std::uint64_t master_seed) {
  SeedRecord seeds;
  seeds.master = master_seed;
  seeds.graph = derive_seed(master_seed, 0);
  seeds.precision = derive_seed(master_seed, 1);
  seeds.sc = derive_seed(master_seed, 2);
  seeds.timeseries = derive_seed(master_seed, 3);
  topo.seed = seeds.graph;
  spec.seed = seeds.sc;

  EdgeSet graph = gen_graph(topo);
  PrecisionEstimate omega = gen_precision(graph, topo.p, seeds.precision);
  StructuralPrior sc = gen_sc(omega, spec);
  TimeSeriesData ts = sample_timeseries(omega, n_time, seeds.timeseries);
  return GroundTruth{seeds, std::move(graph), std::move(omega), std::move(sc), std::move(ts)};
}

std::vector<std::string> verify(const GroundTruth& gt, double misspec_frac) {
  std::vector<std::string> problems;
  const int p = gt.omega_true.dim();
  if (gt.omega_true.edges() != gt.graph) problems.emplace_back("support of omega_true differs from graph");
  const Matrix& sc = gt.sc.matrix();
  if (sc.rows() != p) problems.emplace_back("sc dimension differs from omega_true");
  if (gt.timeseries.n_regions() != p) problems.emplace_back("time series dimension differs from omega_true");
  if (!problems.empty()) return problems;
  if (sc.diagonal().cwiseAbs().maxCoeff() != 0.0) problems.emplace_back("sc diagonal is not zero");
  if ((sc - sc.transpose()).cwiseAbs().maxCoeff() != 0.0) problems.emplace_back("sc is not symmetric");
  if ((sc.array() < 0).any() || (sc.array() > 1).any()) problems.emplace_back("sc values outside [0,1]");
  if (!is_positive_definite(gt.omega_true.matrix())) problems.emplace_back("omega_true is not PD");

  std::set<std::pair<int, int>> truth;
  for (const Edge& e : gt.graph) truth.emplace(e.j, e.k);
  std::size_t non_edges = 0, flagged = 0;
  for (int j = 0; j < p; ++j) {
    for (int k = j + 1; k < p; ++k) {
      if (truth.count({j, k})) continue;
      ++non_edges;
      if (sc(j, k) > 0) ++flagged;
    }
  }
  if (non_edges > 0) {
    const double frac = static_cast<double>(flagged) / static_cast<double>(non_edges);
    if (std::abs(frac - misspec_frac) > 1.0 / static_cast<double>(non_edges) + 1e-12) {
      problems.emplace_back("mis-specified share " + std::to_string(frac) + " differs from " +
                            std::to_string(misspec_frac));
    }
  }
  return problems;
}

}  // namespace siggm::sim
