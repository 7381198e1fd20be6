#include "siggm/netmetrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>
#include <set>

#include "siggm/rng.hpp"

namespace siggm::metrics {

namespace {

std::vector<std::vector<int>> adjacency_lists(const EdgeSet& g, int p) {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(p));
  for (const Edge& e : g) {
    if (e.j < 0 || e.k >= p || e.j == e.k) throw InputError("edge out of range");
    adj[static_cast<std::size_t>(e.j)].push_back(e.k);
    adj[static_cast<std::size_t>(e.k)].push_back(e.j);
  }
  for (auto& a : adj) {
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
  }
  return adj;
}

std::vector<int> bfs(const std::vector<std::vector<int>>& adj, int src) {
  std::vector<int> dist(adj.size(), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(src)] = 0;
  frontier.push(src);
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
    }
  }
  return dist;
}

double efficiency_of(const std::vector<std::vector<int>>& adj) {
  const auto n = adj.size();
  if (n < 2) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = bfs(adj, static_cast<int>(i));
    for (std::size_t j = 0; j < n; ++j)
      if (j != i && d[j] > 0) sum += 1.0 / d[j];
  }
  return sum / (static_cast<double>(n) * static_cast<double>(n - 1));
}

}  // namespace

double ConfusionCounts::sensitivity() const {
  const auto pos = tp + fn;
  return pos > 0 ? static_cast<double>(tp) / static_cast<double>(pos) : 0.0;
}

double ConfusionCounts::specificity() const {
  const auto neg = tn + fp;
  return neg > 0 ? static_cast<double>(tn) / static_cast<double>(neg) : 1.0;
}

ConfusionCounts confusion(const EdgeSet& est, const EdgeSet& truth, int p) {
  std::set<std::pair<int, int>> t;
  for (const Edge& e : truth) t.emplace(e.j, e.k);
  std::set<std::pair<int, int>> s;
  for (const Edge& e : est) s.emplace(e.j, e.k);

  ConfusionCounts c;
  for (const auto& e : s) (t.count(e) ? c.tp : c.fp)++;
  c.fn = static_cast<std::int64_t>(t.size()) - c.tp;
  c.tn = static_cast<std::int64_t>(pair_count(p)) - c.tp - c.fp - c.fn;
  return c;
}

double mcc(const ConfusionCounts& c) {
  const double tp = static_cast<double>(c.tp), tn = static_cast<double>(c.tn);
  const double fp = static_cast<double>(c.fp), fn = static_cast<double>(c.fn);
  const double denom = (tp + fp) * (tp + fn) * (tn + fp) * (tn + fn);
  if (denom == 0.0) return 0.0;
  return (tp * tn - fp * fn) / std::sqrt(denom);
}

double auc(const std::vector<EdgeSet>& path, const EdgeSet& truth, int p) {
  if (path.empty()) throw InputError("auc needs a nonempty path");
  std::map<double, double> best;  // fpr -> max tpr
  best[0.0] = 0.0;
  best[1.0] = 1.0;
  for (const EdgeSet& g : path) {
    const ConfusionCounts c = confusion(g, truth, p);
    const double x = c.false_positive_rate(), y = c.sensitivity();
    auto [it, inserted] = best.emplace(x, y);
    if (!inserted) it->second = std::max(it->second, y);
  }
  double area = 0.0;
  auto prev = best.begin();
  for (auto it = std::next(best.begin()); it != best.end(); ++it, ++prev) {
    area += (it->first - prev->first) * 0.5 * (it->second + prev->second);
  }
  return area;
}

double rel_l1_error(const Matrix& est, const Matrix& truth) {
  if (est.rows() != truth.rows() || est.cols() != truth.cols()) throw InputError("rel_l1_error: dimension mismatch");
  const double denom = truth.cwiseAbs().sum();
  if (denom == 0.0) throw InputError("rel_l1_error: reference matrix is zero");
  return (est - truth).cwiseAbs().sum() / denom;
}

std::vector<std::vector<int>> shortest_paths(const EdgeSet& g, int p) {
  const auto adj = adjacency_lists(g, p);
  std::vector<std::vector<int>> d;
  d.reserve(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) d.push_back(bfs(adj, i));
  return d;
}

double global_efficiency(const EdgeSet& g, int p) { return efficiency_of(adjacency_lists(g, p)); }

GraphSummary graph_summaries(const EdgeSet& g, int p) {
  const auto adj = adjacency_lists(g, p);
  GraphSummary out;
  if (p < 1) return out;

  double clust = 0.0, eloc = 0.0;
  for (int i = 0; i < p; ++i) {
    const auto& nb = adj[static_cast<std::size_t>(i)];
    const auto k = nb.size();
    if (k < 2) continue;
    // subgraph induced by the neighbours of i
    std::vector<std::vector<int>> sub(k);
    std::int64_t links = 0;
    for (std::size_t a = 0; a < k; ++a) {
      const auto& na = adj[static_cast<std::size_t>(nb[a])];
      for (std::size_t b = a + 1; b < k; ++b) {
        if (std::binary_search(na.begin(), na.end(), nb[b])) {
          sub[a].push_back(static_cast<int>(b));
          sub[b].push_back(static_cast<int>(a));
          ++links;
        }
      }
    }
    clust += static_cast<double>(links) / (0.5 * static_cast<double>(k) * static_cast<double>(k - 1));
    eloc += efficiency_of(sub);
  }
  out.clustering = clust / p;
  out.local_efficiency = eloc / p;

  double path_sum = 0.0, inv_sum = 0.0;
  std::int64_t connected = 0;
  for (int i = 0; i < p; ++i) {
    const auto d = bfs(adj, i);
    for (int j = 0; j < p; ++j) {
      if (j == i) continue;
      if (d[static_cast<std::size_t>(j)] > 0) {
        path_sum += d[static_cast<std::size_t>(j)];
        inv_sum += 1.0 / d[static_cast<std::size_t>(j)];
        ++connected;
      } else {
        ++out.disconnected_pairs;
      }
    }
  }
  out.disconnected_pairs /= 2;
  out.char_path_length = connected > 0 ? path_sum / static_cast<double>(connected) : 0.0;
  out.global_efficiency = p > 1 ? inv_sum / (static_cast<double>(p) * (p - 1)) : 0.0;
  out.mean_degree = 2.0 * static_cast<double>(g.size()) / p;
  return out;
}

std::optional<double> icc31(const Matrix& x) {
  const Eigen::Index n = x.rows(), k = x.cols();
  if (n < 2 || k < 2) throw InputError("icc31 needs at least 2 subjects and 2 sessions");
  if (!x.allFinite()) throw InputError("icc31: non-finite measurement");

  const double grand = x.mean();
  const Vector row_means = x.rowwise().mean();
  const Eigen::RowVectorXd col_means = x.colwise().mean();
  const double ss_total = (x.array() - grand).square().sum();
  const double ss_rows = static_cast<double>(k) * (row_means.array() - grand).square().sum();
  const double ss_cols = static_cast<double>(n) * (col_means.array() - grand).square().sum();
  const double ss_err = std::max(ss_total - ss_rows - ss_cols, 0.0);

  const double bms = ss_rows / static_cast<double>(n - 1);
  const double ems = ss_err / static_cast<double>((n - 1) * (k - 1));
  const double denom = bms + static_cast<double>(k - 1) * ems;
  const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
  if (ss_total <= 1e-28 * scale * scale || denom <= 1e-28 * scale * scale) return std::nullopt;
  return (bms - ems) / denom;
}

std::string icc_label(double icc) {
  if (icc <= 0.2) return "poor";
  if (icc <= 0.4) return "fair";
  if (icc <= 0.6) return "moderate";
  if (icc <= 0.8) return "strong";
  return "near perfect";
}

std::vector<bool> benjamini_hochberg(const std::vector<double>& p_values, double q) {
  const std::size_t m = p_values.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p_values[a] < p_values[b]; });
  std::size_t cutoff = 0;  // number of rejections
  for (std::size_t r = 0; r < m; ++r) {
    if (p_values[order[r]] <= q * static_cast<double>(r + 1) / static_cast<double>(m)) cutoff = r + 1;
  }
  std::vector<bool> reject(m, false);
  for (std::size_t r = 0; r < cutoff; ++r) reject[order[r]] = true;
  return reject;
}

DweResult dwe_test(const Matrix& group_a, const Matrix& group_b, int n_perm, double fdr_q, std::uint64_t seed) {
  if (group_a.rows() < 1 || group_b.rows() < 1) throw InputError("dwe_test: both groups need subjects");
  if (group_a.cols() != group_b.cols()) throw InputError("dwe_test: groups differ in edge dimension");
  if (!group_a.allFinite() || !group_b.allFinite()) throw InputError("dwe_test: non-finite FC value");
  if (n_perm < 1) throw InputError("dwe_test: n_perm must be positive");

  DweResult out;
  if (n_perm < 100) out.warnings.emplace_back("fewer than 100 permutations: p-values are coarse");

  const Eigen::Index na = group_a.rows(), nb = group_b.rows(), m = group_a.cols();
  const Eigen::Index n = na + nb;

  // Canonical subject order within each group, so the result ignores input order.
  auto sorted_rows = [](const Matrix& g) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(g.rows()));
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](Eigen::Index a, Eigen::Index b) {
      for (Eigen::Index c = 0; c < g.cols(); ++c) {
        if (g(a, c) != g(b, c)) return g(a, c) < g(b, c);
      }
      return false;
    });
    return idx;
  };
  Matrix pooled(n, m);
  {
    const auto ia = sorted_rows(group_a), ib = sorted_rows(group_b);
    for (Eigen::Index r = 0; r < na; ++r) pooled.row(r) = group_a.row(ia[static_cast<std::size_t>(r)]);
    for (Eigen::Index r = 0; r < nb; ++r) pooled.row(na + r) = group_b.row(ib[static_cast<std::size_t>(r)]);
  }

  const Eigen::RowVectorXd total = pooled.colwise().sum();
  const Eigen::RowVectorXd sum_a = pooled.topRows(na).colwise().sum();
  const Eigen::RowVectorXd sum_b = pooled.bottomRows(nb).colwise().sum();
  const Eigen::ArrayXd observed =
      (sum_a / static_cast<double>(na) - sum_b / static_cast<double>(nb)).array().abs().transpose();

  Eigen::ArrayXd exceed = Eigen::ArrayXd::Zero(m);
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
  Eigen::RowVectorXd perm_sum(m);
  for (int b = 0; b < n_perm; ++b) {
    std::iota(perm.begin(), perm.end(), 0);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::shuffle(perm.begin(), perm.end(), rng);
    perm_sum.setZero();
    for (Eigen::Index r = 0; r < na; ++r) perm_sum += pooled.row(perm[static_cast<std::size_t>(r)]);
    const Eigen::ArrayXd stat =
        (perm_sum / static_cast<double>(na) - (total - perm_sum) / static_cast<double>(nb)).array().abs().transpose();
    exceed += (stat >= observed - 1e-12 * (1.0 + observed)).cast<double>();
  }

  out.statistic.assign(observed.data(), observed.data() + m);
  out.p_value.resize(static_cast<std::size_t>(m));
  for (Eigen::Index e = 0; e < m; ++e) out.p_value[static_cast<std::size_t>(e)] = (1.0 + exceed[e]) / (1.0 + n_perm);
  out.significant = benjamini_hochberg(out.p_value, fdr_q);
  return out;
}

int ModuleAssignment::n_modules() const {
  return labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end());
}

std::vector<int> ModuleAssignment::sizes() const {
  std::vector<int> s(static_cast<std::size_t>(n_modules()), 0);
  for (int g : labels) ++s[static_cast<std::size_t>(g - 1)];
  return s;
}

void ModuleAssignment::validate(int p) const {
  if (static_cast<int>(labels.size()) != p) throw InputError("module assignment must label every node");
  for (int g : labels)
    if (g < 1) throw InputError("module ids must be >= 1");
  if (n_modules() < 1) throw InputError("need at least one module");
}

std::vector<BlockResult> module_chi_square(const std::vector<bool>& dwe_mask, const ModuleAssignment& modules,
                                           int n_perm, std::uint64_t seed) {
  const int p = nodes_for_pair_count(dwe_mask.size());
  modules.validate(p);
  const int n_groups = modules.n_modules();
  const auto sizes = modules.sizes();

  auto block_of = [&](int g1, int g2) {  // 1-based, g1 >= g2
    return static_cast<std::size_t>((g1 - 1) * g1 / 2 + (g2 - 1));
  };
  const std::size_t n_blocks = static_cast<std::size_t>(n_groups * (n_groups + 1) / 2);

  std::vector<std::size_t> edge_block(dwe_mask.size());
  std::vector<std::int64_t> q(n_blocks, 0);
  std::int64_t total = 0;
  {
    std::size_t idx = 0;
    for (int j = 0; j < p; ++j) {
      for (int k = j + 1; k < p; ++k, ++idx) {
        const int a = modules.labels[static_cast<std::size_t>(j)], b = modules.labels[static_cast<std::size_t>(k)];
        edge_block[idx] = block_of(std::max(a, b), std::min(a, b));
        if (dwe_mask[idx]) {
          ++q[edge_block[idx]];
          ++total;
        }
      }
    }
  }
  const double p_star = static_cast<double>(total) / static_cast<double>(dwe_mask.size());

  std::vector<BlockResult> out(n_blocks);
  for (int g1 = 1; g1 <= n_groups; ++g1) {
    for (int g2 = 1; g2 <= g1; ++g2) {
      BlockResult& r = out[block_of(g1, g2)];
      r.g1 = g1;
      r.g2 = g2;
      r.q = q[block_of(g1, g2)];
      const double s1 = sizes[static_cast<std::size_t>(g1 - 1)], s2 = sizes[static_cast<std::size_t>(g2 - 1)];
      r.expected = g1 == g2 ? 0.5 * p_star * s1 * (s2 - 1.0) : p_star * s1 * s2;
      if (r.expected > 0) {
        r.chi2 = (static_cast<double>(r.q) - r.expected) * (static_cast<double>(r.q) - r.expected) / r.expected;
      } else {
        r.degenerate = true;
      }
    }
  }

  std::vector<std::int64_t> exceed(n_blocks, 0);
  std::vector<std::size_t> pool(dwe_mask.size());
  std::vector<std::int64_t> counts(n_blocks);
  for (int b = 0; b < n_perm && total > 0; ++b) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(b)));
    std::iota(pool.begin(), pool.end(), 0);
    std::fill(counts.begin(), counts.end(), 0);
    // partial Fisher-Yates: the first `total` slots are a uniform draw without replacement
    for (std::int64_t t = 0; t < total; ++t) {
      std::uniform_int_distribution<std::size_t> pick(static_cast<std::size_t>(t), pool.size() - 1);
      std::swap(pool[static_cast<std::size_t>(t)], pool[pick(rng)]);
      ++counts[edge_block[pool[static_cast<std::size_t>(t)]]];
    }
    for (std::size_t blk = 0; blk < n_blocks; ++blk) {
      if (out[blk].degenerate) continue;
      const double d = static_cast<double>(counts[blk]) - out[blk].expected;
      if (d * d / out[blk].expected >= out[blk].chi2 - 1e-12 * (1.0 + out[blk].chi2)) ++exceed[blk];
    }
  }
  for (std::size_t blk = 0; blk < n_blocks; ++blk) {
    if (out[blk].degenerate || total == 0) {
      out[blk].p_value = 1.0;
    } else {
      out[blk].p_value = (1.0 + static_cast<double>(exceed[blk])) / (1.0 + n_perm);
    }
  }
  return out;
}

}  // namespace siggm::metrics
