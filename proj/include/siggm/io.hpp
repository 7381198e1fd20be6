#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "siggm/estimator.hpp"
#include "siggm/netmetrics.hpp"
#include "siggm/simgen.hpp"

namespace siggm::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1.0";

/// Numeric CSV with an optional header row. Errors carry the file name and 1-based line.
struct CsvMatrix {
  Matrix values;
  std::vector<std::string> header;
};

CsvMatrix read_csv_matrix(const std::string& path);
CsvMatrix parse_csv_matrix(const std::string& text, const std::string& source);
std::string format_csv_matrix(const Matrix& m, const std::vector<std::string>& header = {});
void write_csv_matrix(const std::string& path, const Matrix& m, const std::vector<std::string>& header = {});

/// Writes to a temporary sibling and renames it over `path`.
void write_atomic(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

Json read_json(const std::string& path);
/// Throws InputError when `doc` has no format_version or an unknown major version.
void check_format_version(const Json& doc, const std::string& source);

Json to_json(const estimator::FitConfig& cfg);
/// Applies the keys present in `doc` on top of `cfg`.
estimator::FitConfig fit_config_from_json(const Json& doc, estimator::FitConfig cfg = {});

struct FitRecord {
  estimator::FitResult fit;
  std::vector<std::string> labels;
  std::vector<double> nu_grid;
  std::vector<double> bic_path;
  std::vector<EdgeSet> edge_path;  // may be empty
  double wall_seconds = 0;
  Json config;
};

Json to_json(const FitRecord& rec, bool include_path_edges);

/// What the metrics/icc/dwe commands need back from an estimate file.
struct LoadedFit {
  Matrix omega;
  std::vector<std::string> labels;
  std::vector<EdgeSet> edge_path;
};

LoadedFit load_fit(const std::string& path);

Json to_json(const sim::GroundTruth& gt, const sim::GraphTopology& topo, const sim::ScSpec& spec, int n_time);
/// omega_true.csv, sc.csv, timeseries.csv and meta.json under `dir`.
void write_bundle(const std::string& dir, const sim::GroundTruth& gt, const sim::GraphTopology& topo,
                  const sim::ScSpec& spec, int n_time);

/// Two-column CSV (node_label, module_id). Labels are region names from `labels` when
/// given, otherwise 1-based node indices.
metrics::ModuleAssignment read_modules(const std::string& path, const std::vector<std::string>& labels, int p);

}  // namespace siggm::io
