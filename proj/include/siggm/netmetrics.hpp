#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "siggm/model_core.hpp"

namespace siggm::metrics {

struct ConfusionCounts {
  std::int64_t tp = 0, tn = 0, fp = 0, fn = 0;
  double sensitivity() const;
  double specificity() const;
  double false_positive_rate() const { return 1.0 - specificity(); }
};

ConfusionCounts confusion(const EdgeSet& est, const EdgeSet& truth, int p);

/// Matthews correlation coefficient; 0 when any marginal is empty.
double mcc(const ConfusionCounts& c);

/// Trapezoidal ROC area over the (FPR, TPR) points of a sparsity path plus (0,0) and (1,1).
double auc(const std::vector<EdgeSet>& path, const EdgeSet& truth, int p);

/// Entrywise |est - truth|_1 / |truth|_1.
double rel_l1_error(const Matrix& est, const Matrix& truth);

/// All-pairs unweighted shortest-path lengths (BFS); -1 marks unreachable pairs.
std::vector<std::vector<int>> shortest_paths(const EdgeSet& g, int p);

/// Mean of 1/d over ordered pairs i != j; unreachable pairs contribute 0.
double global_efficiency(const EdgeSet& g, int p);

struct GraphSummary {
  double clustering = 0;
  double char_path_length = 0;   // over connected pairs only
  std::int64_t disconnected_pairs = 0;
  double local_efficiency = 0;
  double global_efficiency = 0;
  double mean_degree = 0;
};

GraphSummary graph_summaries(const EdgeSet& g, int p);

/// ICC(3,1) on an n_subjects x k_sessions table; nullopt when the ratio is undefined
/// (no variance at all, or no between-subject and no residual variance).
std::optional<double> icc31(const Matrix& measurements);

/// Agreement label on the poor/fair/moderate/strong/near perfect scale.
std::string icc_label(double icc);

struct DweResult {
  std::vector<bool> significant;
  std::vector<double> statistic;
  std::vector<double> p_value;
  std::vector<std::string> warnings;
};

/// Two-group permutation test per edge on |mean_A - mean_B| with Benjamini-Hochberg
/// control at `fdr_q`. Rows of `group_a`/`group_b` are subjects, columns are edges.
DweResult dwe_test(const Matrix& group_a, const Matrix& group_b, int n_perm = 5000, double fdr_q = 0.05,
                   std::uint64_t seed = 0);

/// Benjamini-Hochberg step-up rejections.
std::vector<bool> benjamini_hochberg(const std::vector<double>& p_values, double q);

struct ModuleAssignment {
  std::vector<int> labels;  // module id per node, 1..G

  int n_modules() const;
  std::vector<int> sizes() const;
  void validate(int p) const;
};

struct BlockResult {
  int g1 = 0, g2 = 0;  // g1 >= g2, 1-based
  std::int64_t q = 0;
  double expected = 0;
  double chi2 = 0;
  double p_value = 1.0;
  bool degenerate = false;  // expected count was zero
};

/// Observed vs expected DWE counts per module block, block p-values by uniform
/// redistribution of the DWEs over all edges.
std::vector<BlockResult> module_chi_square(const std::vector<bool>& dwe_mask, const ModuleAssignment& modules,
                                           int n_perm = 5000, std::uint64_t seed = 0);

}  // namespace siggm::metrics
