#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "../oracles.hpp"
#include "siggm/commands.hpp"
#include "siggm/io.hpp"
#include "siggm/simgen.hpp"

using namespace siggm;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = fs::temp_directory_path() / ("siggm_test_" + tag + "_" + std::to_string(::getpid()));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

struct RunResult {
  int code;
  std::string out, err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

/// Sparse precision from an ER graph with the given density.
Matrix subject_precision(double q, std::uint64_t seed) {
  sim::GraphTopology t;
  t.p = 20;
  t.er_prob = q;
  t.seed = seed;
  return sim::gen_precision(sim::gen_graph(t), 20, seed + 1).matrix();
}

}  // namespace

TEST_SUITE("io_cli") {
  TEST_CASE("csv parsing with and without a header") {
    const auto a = io::parse_csv_matrix("x,y\n1,2\n3,4.5\n", "a.csv");
    CHECK(a.header == std::vector<std::string>{"x", "y"});
    CHECK(a.values.rows() == 2);
    CHECK(a.values(1, 1) == 4.5);
    const auto b = io::parse_csv_matrix("1,2\n\n3,4\n", "b.csv");
    CHECK(b.header.empty());
    CHECK(b.values.rows() == 2);
  }

  TEST_CASE("csv errors name the file and line") {
    try {
      io::parse_csv_matrix("1,2\n3,4\n5,oops\n", "bad.csv");
      FAIL("expected an error");
    } catch (const InputError& e) {
      CHECK(std::string(e.what()).find("bad.csv:3") != std::string::npos);
    }
    CHECK_THROWS_AS(io::parse_csv_matrix("1,2\n3\n", "short.csv"), InputError);
    CHECK_THROWS_AS(io::parse_csv_matrix("1,2\n3,inf\n", "inf.csv"), InputError);
  }

  TEST_CASE("csv round trip is exact") {
    TempDir d("csv");
    const Matrix m = oracle::gaussian(5, 4, 1);
    io::write_csv_matrix(d / "m.csv", m, {"a", "b", "c", "d"});
    const auto back = io::read_csv_matrix(d / "m.csv");
    CHECK(back.values == m);
    CHECK(back.header.size() == 4);
  }

  TEST_CASE("format version gate") {
    CHECK_NOTHROW(io::check_format_version(io::Json{{"format_version", "1.3"}}, "x"));
    CHECK_THROWS_AS(io::check_format_version(io::Json{{"format_version", "2.0"}}, "x"), InputError);
    CHECK_THROWS_AS(io::check_format_version(io::Json{{"p", 3}}, "x"), InputError);
  }

  TEST_CASE("fit config json round trip") {
    estimator::FitConfig cfg;
    cfg.nu = {0.1, 0.2};
    cfg.mode = estimator::FitMode::parametric_baseline;
    cfg.hyper.sigma2_lambda = 0.5;
    cfg.seed = 42;
    const auto back = io::fit_config_from_json(io::to_json(cfg));
    CHECK(back.nu == cfg.nu);
    CHECK(back.mode == cfg.mode);
    CHECK(back.hyper.sigma2_lambda == 0.5);
    CHECK(back.seed == 42);
  }

  TEST_CASE("simulate is byte-identical across runs and verifies") {
    TempDir d("sim");
    for (const char* dir : {"a", "b"}) {
      const auto r = run({"simulate", "--structure", "er", "--p", "100", "--scenario", "MI", "--misspec", "0.1",
                          "--seed", "7", "--out", d / dir, "--verify"});
      REQUIRE(r.code == 0);
      CHECK(r.out.find("verify: ok") != std::string::npos);
    }
    for (const char* f : {"omega_true.csv", "sc.csv", "timeseries.csv", "meta.json"})
      CHECK(slurp(d / (std::string("a/") + f)) == slurp(d / (std::string("b/") + f)));
    const auto meta = io::read_json(d / "a/meta.json");
    CHECK(meta["seeds"]["master"] == 7);
    CHECK(meta.contains("topology"));
    CHECK(meta.contains("scenario"));
  }

  TEST_CASE("estimate then metrics pipeline") {
    TempDir d("pipe");
    REQUIRE(run({"simulate", "--structure", "sw", "--p", "20", "--seed", "3", "--out", d / "b"}).code == 0);
    const auto e = run({"estimate", "--ts", d / "b/timeseries.csv", "--sc", d / "b/sc.csv", "--out", d / "fit.json",
                        "--save-path"});
    REQUIRE(e.code == 0);
    const auto fit = io::read_json(d / "fit.json");
    CHECK(fit["format_version"] == io::kFormatVersion);
    CHECK(fit["p"] == 20);
    CHECK(fit["nu_grid"].size() == 20);
    CHECK(fit["edge_path"].size() == 20);
    CHECK(fit["eta"].is_number());
    const auto m = run({"metrics", "--fit", d / "fit.json", "--truth", d / "b", "--out", d / "m.json"});
    REQUIRE(m.code == 0);
    const auto mj = io::read_json(d / "m.json");
    CHECK(mj["mcc"].get<double>() > 0.0);
    CHECK(mj["auc_points"] == 20);
  }

  TEST_CASE("estimate without SC equals eta_zero mode") {
    TempDir d("eta0");
    REQUIRE(run({"simulate", "--p", "15", "--seed", "4", "--out", d / "b"}).code == 0);
    REQUIRE(run({"estimate", "--ts", d / "b/timeseries.csv", "--nu", "0.3", "--out", d / "a.json"}).code == 0);
    REQUIRE(run({"estimate", "--ts", d / "b/timeseries.csv", "--sc", d / "b/sc.csv", "--mode", "eta_zero", "--nu", "0.3",
                 "--out", d / "b.json"})
                .code == 0);
    const auto a = io::read_json(d / "a.json"), b = io::read_json(d / "b.json");
    CHECK(a["eta"].is_null());
    CHECK(a["omega"] == b["omega"]);
    CHECK(a["alpha"] == b["alpha"]);
    CHECK(a["mode"] == "eta_zero");
  }

  TEST_CASE("corrupt input exits with code 2 and a line number") {
    TempDir d("bad");
    write_file(d / "ts.csv", "a,b,c\n1,2,3\n4,5,6\n7,x,9\n");
    const auto r = run({"estimate", "--ts", d / "ts.csv", "--out", d / "f.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("ts.csv:4") != std::string::npos);
    CHECK_FALSE(fs::exists(d / "f.json"));
    write_file(d / "ts2.csv", "1,2,3\n4,5,6\n7,8,10\n");
    write_file(d / "sc.csv", "0,0.5\n0.5,0\n");
    CHECK(run({"estimate", "--ts", d / "ts2.csv", "--sc", d / "sc.csv", "--out", d / "f.json"}).code == 2);
    CHECK(run({"estimate", "--ts", d / "missing.csv", "--out", d / "f.json"}).code == 2);
  }

  TEST_CASE("usage errors and help") {
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"estimate", "--out", "x.json"}).code == 2);
  }

  TEST_CASE("metrics rejects an unknown format version") {
    TempDir d("ver");
    io::write_csv_matrix(d / "truth.csv", Matrix::Identity(3, 3));
    write_file(d / "fit.json", R"({"format_version": "9.0", "p": 3})");
    CHECK(run({"metrics", "--fit", d / "fit.json", "--truth", d / "truth.csv"}).code == 2);
  }

  TEST_CASE("icc: duplicated sessions give one, shuffled pairing gives about zero") {
    TempDir d("icc");
    fs::create_directories(d / "s1");
    fs::create_directories(d / "s2");
    for (int i = 0; i < 30; ++i) {
      const double q = 0.05 + 0.3 * i / 29.0;
      const std::string name = "sub" + std::to_string(100 + i) + ".csv";
      io::write_csv_matrix(d / ("s1/" + name), subject_precision(q, 10 * i));
      io::write_csv_matrix(d / ("s2/" + name), subject_precision(q, 10 * i + 5));
    }
    const auto dup = run({"icc", "--session1", d / "s1", "--session2", d / "s1", "--out", d / "dup.json"});
    REQUIRE(dup.code == 0);
    for (const auto& row : io::read_json(d / "dup.json")["metrics"]) {
      CHECK(row["icc"].get<double>() == doctest::Approx(1.0));
      CHECK(row["label"] == "near perfect");
      CHECK(row["n_subjects"] == 30);
    }
    const auto retest = run({"icc", "--session1", d / "s1", "--session2", d / "s2", "--out", d / "rt.json"});
    REQUIRE(retest.code == 0);
    const auto shuf = run({"icc", "--session1", d / "s1", "--session2", d / "s2", "--shuffle-pairing", "--seed", "3",
                           "--out", d / "sh.json"});
    REQUIRE(shuf.code == 0);
    const auto rt = io::read_json(d / "rt.json")["metrics"], sh = io::read_json(d / "sh.json")["metrics"];
    for (std::size_t k = 0; k < sh.size(); ++k) {
      if (sh[k]["metric"] != "mean_degree" && sh[k]["metric"] != "global_efficiency") continue;
      CHECK(rt[k]["icc"].get<double>() > 0.8);
      CHECK(std::abs(sh[k]["icc"].get<double>()) < 0.4);
    }
  }

  TEST_CASE("icc: unmatched subjects exit 2 and are listed") {
    TempDir d("iccbad");
    fs::create_directories(d / "s1");
    fs::create_directories(d / "s2");
    io::write_csv_matrix(d / "s1/a.csv", subject_precision(0.2, 1));
    io::write_csv_matrix(d / "s1/b.csv", subject_precision(0.2, 2));
    io::write_csv_matrix(d / "s2/a.csv", subject_precision(0.2, 3));
    io::write_csv_matrix(d / "s2/c.csv", subject_precision(0.2, 4));
    const auto r = run({"icc", "--session1", d / "s1", "--session2", d / "s2"});
    CHECK(r.code == 2);
    CHECK(r.err.find("b.csv") != std::string::npos);
    CHECK(r.err.find("c.csv") != std::string::npos);
  }

  TEST_CASE("dwe: identical groups give a zero table, shifted module is flagged") {
    TempDir d("dwe");
    const int p = 12;
    fs::create_directories(d / "a");
    fs::create_directories(d / "b");
    fs::create_directories(d / "c");
    for (int i = 0; i < 10; ++i) {
      Matrix base = oracle::gaussian(p, p, 100 + i) * 0.1;
      base = (base + base.transpose()).eval();
      base.diagonal().setOnes();
      Matrix shifted = oracle::gaussian(p, p, 200 + i) * 0.1;
      shifted = (shifted + shifted.transpose()).eval();
      shifted.diagonal().setOnes();
      shifted.topLeftCorner(4, 4).array() += 3.0;
      shifted.diagonal().setOnes();
      io::write_csv_matrix(d / ("a/s" + std::to_string(i) + ".csv"), base);
      io::write_csv_matrix(d / ("b/s" + std::to_string(i) + ".csv"), base);
      io::write_csv_matrix(d / ("c/s" + std::to_string(i) + ".csv"), shifted);
    }
    std::string mods = "node,module\n";
    for (int i = 0; i < p; ++i) mods += std::to_string(i + 1) + "," + std::to_string(i / 4 + 1) + "\n";
    write_file(d / "mods.csv", mods);

    const auto same = run({"dwe", "--group-a", d / "a", "--group-b", d / "b", "--modules", d / "mods.csv", "--n-perm",
                           "500", "--out", d / "same.json"});
    REQUIRE(same.code == 0);
    const auto sj = io::read_json(d / "same.json");
    CHECK(sj["n_dwe"] == 0);
    for (const auto& b : sj["blocks"]) CHECK(b["q"] == 0);

    const auto diff = run({"dwe", "--group-a", d / "a", "--group-b", d / "c", "--modules", d / "mods.csv", "--n-perm",
                           "1000", "--seed", "5", "--out", d / "diff.json"});
    REQUIRE(diff.code == 0);
    const auto dj = io::read_json(d / "diff.json");
    std::int64_t sum = 0;
    for (const auto& b : dj["blocks"]) {
      sum += b["q"].get<std::int64_t>();
      if (b["g1"] == 1 && b["g2"] == 1) {
        CHECK(b["q"] == 6);
        CHECK(b["p_value"].get<double>() < 0.05);
      }
    }
    CHECK(sum == dj["n_dwe"].get<std::int64_t>());

    write_file(d / "short.csv", "1,1\n2,1\n");
    CHECK(run({"dwe", "--group-a", d / "a", "--group-b", d / "b", "--modules", d / "short.csv"}).code == 2);
  }

  TEST_CASE("atomic writes leave no temporary files") {
    TempDir d("atomic");
    io::write_atomic(d / "sub/x.txt", "hello");
    CHECK(slurp(d / "sub/x.txt") == "hello");
    int n = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(d / "sub")) ++n;
    CHECK(n == 1);
  }
}
