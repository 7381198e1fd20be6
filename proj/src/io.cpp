#include "siggm/io.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include <unistd.h>

namespace siggm::io {

namespace fs = std::filesystem;

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    out.push_back(trim(std::string_view(line).substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

std::optional<double> parse_number(const std::string& field) {
  if (field.empty()) return std::nullopt;
  const char* first = field.data();
  if (*first == '+') ++first;
  double v = 0;
  const auto [ptr, ec] = std::from_chars(first, field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line);
}

Json triplets(const Matrix& m, const EdgeSet& edges, bool with_diagonal) {
  Json out = Json::array();
  if (with_diagonal) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) out.push_back({i, i, m(i, i)});
  }
  for (const Edge& e : edges) out.push_back({e.j, e.k, m(e.j, e.k)});
  return out;
}

Json vec(const Vector& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

}  // namespace

CsvMatrix parse_csv_matrix(const std::string& text, const std::string& source) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::vector<double>> rows;
  CsvMatrix out;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    std::vector<double> row;
    row.reserve(fields.size());
    std::optional<std::size_t> bad;
    for (std::size_t c = 0; c < fields.size(); ++c) {
      const auto v = parse_number(fields[c]);
      if (!v) {
        bad = c;
        break;
      }
      row.push_back(*v);
    }
    if (bad) {
      if (rows.empty() && out.header.empty()) {
        out.header = fields;
        width = fields.size();
        continue;
      }
      throw InputError(where(source, line_no) + ": column " + std::to_string(*bad + 1) + " is not a number ('" +
                       fields[*bad] + "')");
    }
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (!std::isfinite(row[c])) {
        throw InputError(where(source, line_no) + ": column " + std::to_string(c + 1) + " is not finite");
      }
    }
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw InputError(where(source, line_no) + ": expected " + std::to_string(width) + " fields, found " +
                       std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InputError(source + ": no numeric rows");

  out.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < width; ++c)
      out.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  return out;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvMatrix read_csv_matrix(const std::string& path) { return parse_csv_matrix(read_text(path), path); }

std::string format_csv_matrix(const Matrix& m, const std::vector<std::string>& header) {
  std::ostringstream out;
  out.precision(17);
  if (!header.empty()) {
    for (std::size_t c = 0; c < header.size(); ++c) out << (c ? "," : "") << header[c];
    out << '\n';
  }
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << (c ? "," : "") << m(r, c);
    out << '\n';
  }
  return out.str();
}

void write_csv_matrix(const std::string& path, const Matrix& m, const std::vector<std::string>& header) {
  write_atomic(path, format_csv_matrix(m, header));
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move " + tmp.string() + " to " + path + ": " + ec.message());
  }
}

Json read_json(const std::string& path) {
  const std::string text = read_text(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path + ": invalid JSON (" + e.what() + ")");
  }
}

void check_format_version(const Json& doc, const std::string& source) {
  if (!doc.is_object() || !doc.contains("format_version") || !doc["format_version"].is_string()) {
    throw InputError(source + ": missing format_version");
  }
  const std::string v = doc["format_version"].get<std::string>();
  const std::string major = v.substr(0, v.find('.'));
  if (major != "1") throw InputError(source + ": unsupported format_version " + v);
}

Json to_json(const estimator::FitConfig& cfg) {
  Json j;
  j["nu"] = cfg.nu;
  j["epsilon"] = cfg.epsilon;
  j["max_outer"] = cfg.max_outer;
  j["mode"] = estimator::to_string(cfg.mode);
  Json hyper = Json::object();
  if (cfg.hyper.mu0) hyper["mu0"] = *cfg.hyper.mu0;
  if (cfg.hyper.sigma2_mu) hyper["sigma2_mu"] = *cfg.hyper.sigma2_mu;
  if (cfg.hyper.a_eta) hyper["a_eta"] = *cfg.hyper.a_eta;
  if (cfg.hyper.b_eta) hyper["b_eta"] = *cfg.hyper.b_eta;
  if (cfg.hyper.sigma2_lambda) hyper["sigma2_lambda"] = *cfg.hyper.sigma2_lambda;
  j["hyper"] = hyper;
  j["newton"] = {{"step_shrink", cfg.newton.step_shrink},
                 {"armijo_c", cfg.newton.armijo_c},
                 {"max_backtracks", cfg.newton.max_backtracks},
                 {"max_steps", cfg.newton.max_steps},
                 {"grad_tol", cfg.newton.grad_tol}};
  j["solver"] = {{"tol", cfg.solver.tol}, {"max_iter", cfg.solver.max_iter}};
  j["seed"] = cfg.seed;
  j["baseline_eta"] = cfg.baseline_eta;
  j["freeze_mu_eta"] = cfg.freeze_mu_eta;
  j["init_grid_size"] = cfg.init_grid_size;
  j["default_grid_size"] = cfg.default_grid_size;
  return j;
}

estimator::FitConfig fit_config_from_json(const Json& doc, estimator::FitConfig cfg) {
  if (!doc.is_object()) throw InputError("config must be a JSON object");
  try {
    if (doc.contains("nu")) {
      cfg.nu = doc["nu"].is_array() ? doc["nu"].get<std::vector<double>>()
                                    : std::vector<double>{doc["nu"].get<double>()};
    }
    if (doc.contains("epsilon")) cfg.epsilon = doc["epsilon"].get<double>();
    if (doc.contains("max_outer")) cfg.max_outer = doc["max_outer"].get<int>();
    if (doc.contains("mode")) cfg.mode = estimator::fit_mode_from_string(doc["mode"].get<std::string>());
    if (doc.contains("hyper")) {
      const Json& h = doc["hyper"];
      if (h.contains("mu0")) cfg.hyper.mu0 = h["mu0"].get<double>();
      if (h.contains("sigma2_mu")) cfg.hyper.sigma2_mu = h["sigma2_mu"].get<double>();
      if (h.contains("a_eta")) cfg.hyper.a_eta = h["a_eta"].get<double>();
      if (h.contains("b_eta")) cfg.hyper.b_eta = h["b_eta"].get<double>();
      if (h.contains("sigma2_lambda")) cfg.hyper.sigma2_lambda = h["sigma2_lambda"].get<double>();
    }
    if (doc.contains("newton")) {
      const Json& n = doc["newton"];
      if (n.contains("step_shrink")) cfg.newton.step_shrink = n["step_shrink"].get<double>();
      if (n.contains("armijo_c")) cfg.newton.armijo_c = n["armijo_c"].get<double>();
      if (n.contains("max_backtracks")) cfg.newton.max_backtracks = n["max_backtracks"].get<int>();
      if (n.contains("max_steps")) cfg.newton.max_steps = n["max_steps"].get<int>();
      if (n.contains("grad_tol")) cfg.newton.grad_tol = n["grad_tol"].get<double>();
    }
    if (doc.contains("solver")) {
      const Json& s = doc["solver"];
      if (s.contains("tol")) cfg.solver.tol = s["tol"].get<double>();
      if (s.contains("max_iter")) cfg.solver.max_iter = s["max_iter"].get<int>();
    }
    if (doc.contains("seed")) cfg.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("baseline_eta")) cfg.baseline_eta = doc["baseline_eta"].get<double>();
    if (doc.contains("freeze_mu_eta")) cfg.freeze_mu_eta = doc["freeze_mu_eta"].get<bool>();
    if (doc.contains("init_grid_size")) cfg.init_grid_size = doc["init_grid_size"].get<int>();
    if (doc.contains("default_grid_size")) cfg.default_grid_size = doc["default_grid_size"].get<int>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

Json to_json(const FitRecord& rec, bool include_path_edges) {
  const auto& f = rec.fit;
  const int p = f.omega.dim();
  Json j;
  j["format_version"] = kFormatVersion;
  j["p"] = p;
  j["index_base"] = 0;
  j["region_labels"] = rec.labels;
  j["mode"] = estimator::to_string(f.mode);
  j["omega"] = triplets(f.omega.matrix(), f.omega.edges(), true);
  j["partial_correlation"] = triplets(partial_correlation(f.omega), f.omega.edges(), false);
  j["n_edges"] = f.omega.edges().size();
  j["alpha"] = vec(f.state.alpha);
  j["mu"] = vec(f.state.mu);
  j["eta"] = f.mode == estimator::FitMode::eta_zero ? Json(nullptr) : Json(f.state.eta);
  j["sigma2_lambda"] = f.state.sigma2_lambda;
  j["lambda0"] = f.lambda0;
  j["nu"] = f.state.nu;
  j["bic"] = f.bic;
  j["nu_grid"] = rec.nu_grid;
  j["bic_path"] = rec.bic_path;
  j["iterations"] = f.n_iter;
  j["converged"] = f.converged;
  j["objective_trace"] = f.objective_trace;
  j["wall_time_seconds"] = rec.wall_seconds;
  j["config"] = rec.config;
  j["warnings"] = f.warnings;
  if (include_path_edges) {
    Json path = Json::array();
    for (const EdgeSet& es : rec.edge_path) {
      Json edges = Json::array();
      for (const Edge& e : es) edges.push_back({e.j, e.k});
      path.push_back(edges);
    }
    j["edge_path"] = path;
  }
  return j;
}

LoadedFit load_fit(const std::string& path) {
  const Json doc = read_json(path);
  check_format_version(doc, path);
  LoadedFit out;
  try {
    const int p = doc.at("p").get<int>();
    if (p < 1) throw InputError(path + ": p must be positive");
    out.omega = Matrix::Zero(p, p);
    for (const auto& t : doc.at("omega")) {
      const int j = t.at(0).get<int>(), k = t.at(1).get<int>();
      if (j < 0 || k < 0 || j >= p || k >= p) throw InputError(path + ": omega index out of range");
      out.omega(j, k) = out.omega(k, j) = t.at(2).get<double>();
    }
    if (doc.contains("region_labels")) out.labels = doc["region_labels"].get<std::vector<std::string>>();
    if (doc.contains("edge_path")) {
      for (const auto& es : doc["edge_path"]) {
        EdgeSet edges;
        for (const auto& e : es) edges.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
        out.edge_path.push_back(std::move(edges));
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": malformed estimate file (" + e.what() + ")");
  }
  return out;
}

Json to_json(const sim::GroundTruth& gt, const sim::GraphTopology& topo, const sim::ScSpec& spec, int n_time) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["topology"] = {{"kind", sim::to_string(topo.kind)},
                   {"p", topo.p},
                   {"er_prob", topo.er_prob},
                   {"sw_neighbors", topo.sw_neighbors},
                   {"sw_rewire", topo.sw_rewire},
                   {"sf_attach", topo.sf_attach}};
  j["scenario"] = {{"name", sim::to_string(spec.scenario)}, {"misspec_frac", spec.misspec_frac}};
  j["n_time"] = n_time;
  j["seeds"] = {{"master", gt.seeds.master},
                {"graph", gt.seeds.graph},
                {"precision", gt.seeds.precision},
                {"sc", gt.seeds.sc},
                {"timeseries", gt.seeds.timeseries}};
  j["n_edges"] = gt.graph.size();
  j["files"] = {"omega_true.csv", "sc.csv", "timeseries.csv"};
  return j;
}

void write_bundle(const std::string& dir, const sim::GroundTruth& gt, const sim::GraphTopology& topo,
                  const sim::ScSpec& spec, int n_time) {
  fs::create_directories(dir);
  const fs::path d(dir);
  write_csv_matrix((d / "omega_true.csv").string(), gt.omega_true.matrix());
  write_csv_matrix((d / "sc.csv").string(), gt.sc.matrix());
  write_csv_matrix((d / "timeseries.csv").string(), gt.timeseries.values(), gt.timeseries.region_labels());
  write_atomic((d / "meta.json").string(), to_json(gt, topo, spec, n_time).dump(2) + "\n");
}

metrics::ModuleAssignment read_modules(const std::string& path, const std::vector<std::string>& labels, int p) {
  const std::string text = read_text(path);
  std::map<std::string, int> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index[labels[i]] = static_cast<int>(i);

  metrics::ModuleAssignment out;
  out.labels.assign(static_cast<std::size_t>(p), 0);
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (fields.size() != 2) throw InputError(where(path, line_no) + ": expected node_label,module_id");
    const auto module = parse_number(fields[1]);
    if (!module) {
      if (first) {  // header
        first = false;
        continue;
      }
      throw InputError(where(path, line_no) + ": module id is not a number");
    }
    first = false;
    if (*module < 1 || *module != std::floor(*module)) {
      throw InputError(where(path, line_no) + ": module id must be an integer >= 1");
    }
    int node = -1;
    if (!labels.empty()) {
      const auto it = index.find(fields[0]);
      if (it != index.end()) node = it->second;
    }
    if (node < 0) {
      const auto n = parse_number(fields[0]);
      if (n && *n == std::floor(*n) && *n >= 1 && *n <= p) node = static_cast<int>(*n) - 1;
    }
    if (node < 0) throw InputError(where(path, line_no) + ": unknown node '" + fields[0] + "'");
    if (out.labels[static_cast<std::size_t>(node)] != 0) {
      throw InputError(where(path, line_no) + ": node '" + fields[0] + "' listed twice");
    }
    out.labels[static_cast<std::size_t>(node)] = static_cast<int>(*module);
  }
  std::vector<std::string> missing;
  for (int i = 0; i < p; ++i) {
    if (out.labels[static_cast<std::size_t>(i)] == 0) {
      missing.push_back(labels.empty() ? std::to_string(i + 1) : labels[static_cast<std::size_t>(i)]);
    }
  }
  if (!missing.empty()) {
    std::string msg = path + ": modules do not cover all nodes; missing";
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) msg += " " + missing[i];
    if (missing.size() > 10) msg += " ...";
    throw InputError(msg);
  }
  out.validate(p);
  return out;
}

}  // namespace siggm::io
