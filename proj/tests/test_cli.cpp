#include "doctest.h"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gardner5/breather.hpp"
#include "gardner5/cli.hpp"

using namespace gardner5;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Fresh directory under the system temp path, removed on destruction.
struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("gardner5-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

// Parses "x,value" CSV text.
std::vector<std::pair<double, double>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  REQUIRE(line == "x,value");
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    const auto comma = line.find(',');
    rows.emplace_back(std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1)));
  }
  return rows;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run({"--help"}).code == kExitOk);
  CHECK(run({"eval", "--help"}).out.find("--params") != std::string::npos);
  CHECK(run({}).code == kExitInvalidInput);
  CHECK(run({"frobnicate"}).code == kExitInvalidInput);
  CHECK(run({"eval"}).code == kExitInvalidInput);
  CHECK(run({"eval", "--params", "1,1"}).code == kExitInvalidInput);
  CHECK(run({"eval", "--params", "1,1,x"}).code == kExitInvalidInput);
  CHECK(run({"eval", "--params", "1,1,0", "--form", "cubic"}).code == kExitInvalidInput);
}

TEST_CASE("eval writes the breather") {
  const Run r = run({"eval", "--params", "1,1,0", "--grid", "0,40,2048"});
  REQUIRE(r.code == kExitOk);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 2048);
  double csv_peak = 0;
  for (const auto& [x, v] : rows) csv_peak = std::max(csv_peak, v);

  // Independent peak search on a fine scan of the closed form.
  const BreatherParams p = validate_params(1, 1, 0);
  double peak = 0;
  for (int i = -20000; i <= 20000; ++i) peak = std::max(peak, eval_rational(p, 0, i * 1e-4));
  CHECK(csv_peak == doctest::Approx(peak).epsilon(1e-3));
  CHECK(rows.front().first == doctest::Approx(-20.0));
}

TEST_CASE("eval forms agree where they should") {
  const std::string grid = "0,80,8192";
  const auto rational = parse_csv(run({"eval", "--params", "64,1,0", "--grid", grid}).out);
  const auto approx =
      parse_csv(run({"eval", "--params", "64,1,0", "--grid", grid, "--form", "approx"}).out);
  const auto arctan =
      parse_csv(run({"eval", "--params", "2,1,0.3", "--grid", grid, "--form", "arctan"}).out);
  const auto rational2 = parse_csv(run({"eval", "--params", "2,1,0.3", "--grid", grid}).out);
  REQUIRE(rational.size() == approx.size());
  double gap = 0, dual = 0;
  for (std::size_t j = 0; j < rational.size(); ++j) {
    gap = std::max(gap, std::abs(rational[j].second - approx[j].second));
    dual = std::max(dual, std::abs(rational2[j].second - arctan[j].second));
  }
  // beta / alpha = 1/64: within 5% of the peak 2 beta.
  CHECK(gap <= 0.05 * 2.0);
  CHECK(dual <= 1e-9 * 3);
}

TEST_CASE("eval rejects invalid parameters without writing") {
  TempDir dir;
  const std::string path = dir / "out.csv";
  const Run r = run({"eval", "--params", "1,1,1", "--out", path});
  CHECK(r.code == kExitInvalidInput);
  CHECK(r.err.find("Delta") != std::string::npos);
  CHECK_FALSE(fs::exists(path));

  CHECK(run({"eval", "--params", "1,1,0", "--grid", "0,40,15"}).code == kExitInvalidInput);
  CHECK(run({"eval", "--params", "1,1,0", "--out", path}).code == kExitOk);
  CHECK(fs::exists(path));
}

TEST_CASE("verify") {
  SUBCASE("default checks pass") {
    const Run r = run({"verify", "--params", "2,1,0.3", "--time", "0.01"});
    CHECK(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc.at("pass").get<bool>());
    for (const char* name : {"pde", "elliptic", "zero_mean", "dual_form"}) {
      CAPTURE(name);
      CHECK(doc.at("checks").at(name).at("pass").get<bool>());
    }
    CHECK_FALSE(doc.at("checks").contains("mkdv5"));
    CHECK(doc.at("checks").at("pde").at("sup_rel").get<double>() <= 1e-6);
  }
  SUBCASE("corruption fails the pde check") {
    TempDir dir;
    const Run r = run({"verify", "--params", "2,1,0.3", "--corrupt", "1e-3", "--out",
                       dir / "v.json"});
    CHECK(r.code == kExitCheckFailed);
    const json doc = json::parse(slurp(dir / "v.json"));
    CHECK_FALSE(doc.at("checks").at("pde").at("pass").get<bool>());
    CHECK(doc.at("checks").at("pde").at("sup_rel").get<double>() >= 1e-4);
  }
  SUBCASE("mu = 0 adds the mKdV check") {
    const Run r = run({"verify", "--params", "1,1,0"});
    CHECK(r.code == kExitOk);
    const json doc = json::parse(r.out);
    CHECK(doc.at("checks").at("mkdv5").at("pass").get<bool>());
    CHECK(doc.at("checks").at("zero_mean").at("zero_mean").get<bool>());
  }
  SUBCASE("tolerance overrides") {
    CHECK(run({"verify", "--params", "2,1,0.3", "--tolerance", "elliptic=1e-14"}).code ==
          kExitCheckFailed);
    CHECK(run({"verify", "--params", "2,1,0.3", "--tolerance", "bogus=1"}).code ==
          kExitInvalidInput);
    CHECK(run({"verify", "--params", "2,1,0.3", "--tolerance", "pde=-1"}).code ==
          kExitInvalidInput);
  }
}

TEST_CASE("evolve") {
  TempDir dir;
  SUBCASE("breather") {
    write_file(dir / "c.json", R"({
      "initial": "breather",
      "params": {"alpha": 2, "beta": 1, "mu": 0.3},
      "grid": {"center": 0, "length": 62.83185307179586, "points": 576},
      "solver": {"t_end": 0.001, "diagnostics_every": 5000}
    })");
    const Run r = run({"evolve", "--config", dir / "c.json", "--out", dir / "run"});
    REQUIRE(r.code == kExitOk);
    const json diag = json::parse(slurp(dir / "run/diagnostics.json"));
    CHECK(diag.at("closed_form_error").get<double>() <= 1e-6);
    CHECK(diag.at("mass_drift").get<double>() <= 1e-10);
    CHECK(diag.at("l2_drift_relative").get<double>() <= 1e-8);
    CHECK_FALSE(diag.at("step_size_warning").get<bool>());
    CHECK(fs::exists(dir / "run/checkpoint_0000.csv"));
    const std::size_t n = diag.at("checkpoints").size();
    CHECK(n >= 3);
  }
  SUBCASE("zero data") {
    write_file(dir / "z.json", R"({
      "initial": "zero",
      "params": {"mu": 0.3},
      "grid": {"length": 40, "points": 64},
      "solver": {"t_end": 0.01, "dt": 0.001, "diagnostics_every": 2}
    })");
    REQUIRE(run({"evolve", "--config", dir / "z.json", "--out", dir / "zr"}).code == kExitOk);
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dir.path / "zr")) {
      if (entry.path().extension() != ".csv") continue;
      ++files;
      for (const auto& [x, v] : parse_csv(slurp(entry.path().string()))) CHECK(v == 0.0);
    }
    CHECK(files == 6);
  }
  SUBCASE("oversized step trips the guard") {
    write_file(dir / "b.json", R"({
      "params": {"alpha": 2, "beta": 1, "mu": 0.3},
      "grid": {"length": 62.83185307179586, "points": 576},
      "solver": {"t_end": 0.01, "dt": 4e-6}
    })");
    const Run r = run({"evolve", "--config", dir / "b.json"});
    CHECK(r.code == kExitGuard);
    CHECK(r.err.find("warning") != std::string::npos);
  }
  SUBCASE("schema violations") {
    write_file(dir / "u.json", R"({"params": {"alpha": 2, "beta": 1, "mu": 0.3},
      "grid": {"length": 62.8, "points": 576}, "solver": {"t_end": 0.01}, "colour": 1})");
    CHECK(run({"evolve", "--config", dir / "u.json"}).code == kExitInvalidInput);
    write_file(dir / "m.json", R"({"params": {"alpha": 2, "beta": 1, "mu": 0.3},
      "grid": {"length": 62.8, "points": 576}, "solver": {}})");
    CHECK(run({"evolve", "--config", dir / "m.json"}).code == kExitInvalidInput);
    write_file(dir / "bad.json", "{ not json");
    CHECK(run({"evolve", "--config", dir / "bad.json"}).code == kExitInvalidInput);
    CHECK(run({"evolve", "--config", dir / "missing.json"}).code == kExitInvalidInput);
    write_file(dir / "narrow.json", R"({"params": {"alpha": 2, "beta": 1, "mu": 0.3},
      "grid": {"length": 10, "points": 256}, "solver": {"t_end": 0.001}})");
    CHECK(run({"evolve", "--config", dir / "narrow.json"}).code == kExitInvalidInput);
  }
}

TEST_CASE("illposed") {
  TempDir dir;
  SUBCASE("default scan and determinism") {
    const Run a = run({"illposed", "--out", dir / "a"});
    REQUIRE(a.code == kExitOk);
    CHECK(a.out == "verdict: ILL_POSED_SIGNATURE\n");
    const Run b = run({"illposed", "--out", dir / "b"});
    REQUIRE(b.code == kExitOk);
    const std::string csv = slurp(dir / "a/scan.csv");
    CHECK(csv == slurp(dir / "b/scan.csv"));
    CHECK(csv.rfind("alpha,alpha1,alpha2,beta,T,norm0_1,norm0_2,dist0,distT,cross_T,"
                    "separation_ratio\n",
                    0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(csv.find('\r') == std::string::npos);
    const json doc = json::parse(slurp(dir / "a/scan.json"));
    CHECK(doc.at("verdict") == "ILL_POSED_SIGNATURE");
    CHECK(doc.at("rows").size() == 4);
  }
  SUBCASE("contrast and mKdV configs") {
    write_file(dir / "s.json", R"({"s": 0.75})");
    const Run s = run({"illposed", "--config", dir / "s.json", "--out", dir / "s"});
    CHECK(s.code == kExitOk);
    CHECK(s.out == "verdict: NO_VERDICT\n");
    write_file(dir / "m.json", R"({"mu": 0})");
    const Run m = run({"illposed", "--config", dir / "m.json", "--out", dir / "m"});
    CHECK(m.code == kExitOk);
    CHECK(m.out == "verdict: ILL_POSED_SIGNATURE\n");
  }
  SUBCASE("schema violations") {
    write_file(dir / "x.json", R"({"sigma": 0.5})");
    CHECK(run({"illposed", "--config", dir / "x.json", "--out", dir / "x"}).code ==
          kExitInvalidInput);
    write_file(dir / "d.json", R"({"delta": -1})");
    CHECK(run({"illposed", "--config", dir / "d.json", "--out", dir / "d"}).code ==
          kExitInvalidInput);
    write_file(dir / "t.json", R"({"alphas": "8,16"})");
    CHECK(run({"illposed", "--config", dir / "t.json", "--out", dir / "t"}).code ==
          kExitInvalidInput);
  }
}
