#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int status = -1;
  std::string output;
};

std::string bin() { return EPI_LAB_BIN; }

RunResult run(const std::string& args) {
  const fs::path tmp = fs::temp_directory_path() / "epi_lab_cli_stdout.txt";
  const std::string cmd = bin() + " " + args + " > " + tmp.string() + " 2>&1";
  const int rc = std::system(cmd.c_str());
  RunResult r;
  r.status = WEXITSTATUS(rc);
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  r.output = ss.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path tmpfile(const std::string& name) { return fs::temp_directory_path() / name; }

}  // namespace

TEST_CASE("cli: deficit on matched gaussians") {
  const auto out = tmpfile("cli_deficit.json");
  fs::remove(out);
  const auto r = run("deficit --x gauss:0,1 --y gauss:0,1 --lambda 0.5 --points 8192 --out " +
                     out.string());
  REQUIRE(r.status == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("command") == "deficit");
  CHECK(std::abs(j.at("deficit").get<double>()) <= 1e-8);
  CHECK(j.at("params").at("points").get<long>() == 8192);
}

TEST_CASE("cli: missing --lambda is a usage error naming the flag") {
  const auto r = run("deficit --x gauss:0,1 --y gauss:0,4");
  CHECK(r.status == 2);
  CHECK(r.output.find("lambda") != std::string::npos);
}

TEST_CASE("cli: bad descriptor is a usage error and leaves no partial file") {
  const auto out = tmpfile("cli_bad.json");
  fs::remove(out);
  const auto r = run("entropy --input nosuch:1 --out " + out.string());
  CHECK(r.status == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("cli: theorem9 verdict below the gate exits 1 but writes the report") {
  const auto out = tmpfile("cli_t9.json");
  fs::remove(out);
  const auto r =
      run("theorem9 --pmf dgauss:0,10000 --c2 1e10 --verdict --out " + out.string());
  CHECK(r.status == 1);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(j.at("results").at(0).at("scope_warning").get<bool>());
  // without --verdict the same run is exploratory and exits 0
  const auto r2 = run("theorem9 --pmf dgauss:0,10000 --c2 1e10 --out " + out.string());
  CHECK(r2.status == 0);
}

TEST_CASE("cli: determinism across runs, byte for byte") {
  const auto a = tmpfile("cli_det_a");
  const auto b = tmpfile("cli_det_b");
  const std::vector<std::string> matrix = {
      "entropy --input gauss:0,1 --input 'mix:0.5,-1,0.6;0.5,1,1.2' --points 4096",
      "fisher --input cauchy:0,1 --points 65536",
      "deficit --x gauss:0,1 --y gauss:0,4 --lambda 0.5 --points 4096",
      "debruijn --input gauss:0,1 --t 0.5 --dt 1e-3 --points 4096",
      "trajectory --x gauss:0,1 --y gauss:0,4 --lambda 0.5 --t 0.25,0.5,0.75,1.0 --points 2048 "
      "--format csv",
      "discrete-deficit --pmf dgauss:0,100 --pmf geom:0.8",
      "isoperimetry --pmf dgauss:0,100",
      "prop10 --pmf dgauss:0,100 --pmf uniform:0,13",
      "theorem9 --pmf dgauss:0,4000000 --c2 1e10",
      "stability --input gauss:0,1 --points 4096",
      "weak-demo --a 0.4,0.2 --points 4096",
  };
  for (const auto& m : matrix) {
    fs::remove(a);
    fs::remove(b);
    REQUIRE(run(m + " --out " + a.string()).status == 0);
    REQUIRE(run(m + " --out " + b.string()).status == 0);
    CHECK(slurp(a) == slurp(b));
    CHECK(!slurp(a).empty());
  }
}

TEST_CASE("cli: every json report reparses") {
  const auto out = tmpfile("cli_reparse.json");
  const std::vector<std::string> matrix = {
      "entropy --input uniform:0,1",
      "fisher --input gauss:0,2 --points 4096",
      "debruijn --input gauss:0,1 --t 0.5,1.0 --points 4096",
      "trajectory --x gauss:0,1 --y gauss:0,1 --lambda 0.3 --t 0.5,1.0 --points 2048",
      "isoperimetry --pmf geom:0.5",
      "prop10 --pmf dgauss:0,2500",
      "theorem9 --pmf geom:0.9995",
      "stability --input uniform:0,1 --points 8192",
      "weak-demo --a 0.4 --points 2048",
  };
  for (const auto& m : matrix) {
    fs::remove(out);
    REQUIRE(run(m + " --out " + out.string()).status == 0);
    CHECK_NOTHROW(nlohmann::json::parse(slurp(out)));
  }
}

TEST_CASE("cli: config file merges under flags") {
  const auto cfg = tmpfile("cli_cfg.json");
  {
    std::ofstream out(cfg);
    out << R"({"x": "gauss:0,1", "y": "gauss:0,4", "lambda": 0.5, "points": 4096})";
  }
  const auto out1 = tmpfile("cli_cfg_out1.json");
  const auto r1 = run("deficit --config " + cfg.string() + " --out " + out1.string());
  REQUIRE(r1.status == 0);
  const auto j1 = nlohmann::json::parse(slurp(out1));
  CHECK(j1.at("deficit").get<double>() == doctest::Approx(0.1115718).epsilon(1e-4));

  // flag wins over the config value
  const auto out2 = tmpfile("cli_cfg_out2.json");
  const auto r2 =
      run("deficit --config " + cfg.string() + " --y gauss:0,1 --out " + out2.string());
  REQUIRE(r2.status == 0);
  const auto j2 = nlohmann::json::parse(slurp(out2));
  CHECK(std::abs(j2.at("deficit").get<double>()) <= 1e-8);
}

TEST_CASE("cli: csv trajectory carries the pinned header") {
  const auto out = tmpfile("cli_traj.csv");
  REQUIRE(run("trajectory --x gauss:0,1 --y gauss:0,4 --lambda 0.5 --t 0.5,1.0 --points 2048 "
              "--format csv --out " +
              out.string())
              .status == 0);
  const std::string csv = slurp(out);
  CHECK(csv.rfind("t,h_x,h_y,h_mix,I_x,I_y,I_mix,delta,dprime_num,dprime_formula\n", 0) == 0);
}

TEST_CASE("cli: scope violations exit 1") {
  const auto r = run("prop10 --pmf dgauss:0,1");  // sigma^2 < 4
  CHECK(r.status == 1);
}
