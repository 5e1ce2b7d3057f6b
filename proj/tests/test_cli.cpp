#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "hessfield/cli.hpp"
#include "hessfield/common.hpp"

using namespace hessfield;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("hessfield_test_" + std::to_string(::getpid()) + "_" +
                                        std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_file(const TempDir& dir, const std::string& name, const std::string& body) {
  const std::string p = dir.file(name);
  std::ofstream out(p);
  out << body;
  return p;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string hopfield_config(const TempDir& dir, const std::string& out_stem, double dt = 1e-3,
                            double t_max = 1.0) {
  std::ostringstream os;
  os << R"({
  "dimension": 2,
  "potential": {"name": "softplus"},
  "model": {"kind": "hopfield", "J": [0, 0.3, 0.3, 0], "R": [1, 2], "I_ext": [0.1, -0.2]},
  "initial_conditions": [[0.5, -0.5], [1, 1], [-1, 0.3], [0, 0]],
  "integrator": {"dt": )"
     << dt << R"(, "t_max": )" << t_max << R"(, "record_every": 100},
  "outputs": {"format": "csv", "path": ")"
     << dir.file(out_stem) << R"("}
})";
  return write_file(dir, out_stem + "_config.json", os.str());
}

}  // namespace

TEST_CASE("cmd_simulate writes one file per initial condition") {
  TempDir dir;
  const std::string config = hopfield_config(dir, "run");
  const int rc = cmd_simulate(config, {});
  CHECK(rc == 0);
  for (int i = 0; i < 4; ++i) {
    const std::string path = dir.file("run_00" + std::to_string(i) + ".csv");
    CHECK(fs::exists(path));
    const std::string body = slurp(path);
    CHECK(body.rfind("t,U_1,U_2,V_1,V_2,H,dHdt,kappa,field_norm_g\n", 0) == 0);
  }
  CHECK(!fs::exists(dir.file("run_004.csv")));
}

TEST_CASE("cmd_simulate rejects an asymmetric J with exit 1") {
  TempDir dir;
  const std::string config = write_file(dir, "bad.json", R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0, 0.5, 0.1, 0], "R": [1, 1], "I_ext": [0, 0]},
    "initial_conditions": [[0, 0]],
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "csv", "path": "unused"}
  })");
  CHECK(cmd_simulate(config, {}) == 1);
}

TEST_CASE("cmd_simulate flags a Lyapunov violation with exit 2") {
  TempDir dir;
  const std::string config = write_file(dir, "coarse.json", std::string(R"({
    "dimension": 1,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0], "R": [0.3333333333333333], "I_ext": [0]},
    "initial_conditions": [[1.0]],
    "integrator": {"dt": 1.0, "t_max": 30.0},
    "outputs": {"format": "csv", "path": ")") + dir.file("coarse") + R"("}
  })");
  CHECK(cmd_simulate(config, {}) == 2);
}

TEST_CASE("cmd_kappa reports -n/4 at the origin") {
  TempDir dir;
  const std::string config = write_file(dir, "grad4.json", std::string(R"({
    "dimension": 4,
    "potential": {"name": "softplus"},
    "model": {"kind": "quadratic_identity"},
    "initial_conditions": [[0, 0, 0, 0]],
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "csv", "path": ")") + dir.file("grad4") + R"("}
  })");
  CHECK(cmd_kappa(config, "", false, {}) == 0);
  const std::string body = slurp(dir.file("grad4_kappa.csv"));
  std::istringstream lines(body);
  std::string header, row;
  std::getline(lines, header);
  CHECK(header ==
        "U_1,U_2,U_3,U_4,kappa_closed_form,kappa_laplacian,kappa_divergence,max_pairwise_residual");
  std::getline(lines, row);
  CHECK(row.find(",-1,") != std::string::npos);  // closed form exactly -1
}

TEST_CASE("cmd_kappa --at-steady recovers -sum 1/R_a") {
  TempDir dir;
  const std::string config = write_file(dir, "steady.json", std::string(R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0, 0.3, 0.3, 0], "R": [1, 2], "I_ext": [0.1, -0.2]},
    "initial_conditions": [[0, 0]],
    "integrator": {"dt": 0.001, "t_max": 300.0},
    "outputs": {"format": "csv", "path": ")") + dir.file("steady") + R"("}
  })");
  CHECK(cmd_kappa(config, "", true, {}) == 0);
  const std::string body = slurp(dir.file("steady_kappa.csv"));
  // second line, fifth column = closed form
  std::istringstream lines(body);
  std::string header, row;
  std::getline(lines, header);
  std::getline(lines, row);
  std::istringstream cells(row);
  std::string cell;
  for (int i = 0; i < 5; ++i) std::getline(cells, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(-1.5).epsilon(1e-6));
}

TEST_CASE("cmd_simulate output is byte-identical across reruns") {
  TempDir dir;
  const std::string config = write_file(dir, "det.json", std::string(R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0, 0.3, 0.3, 0], "R": [1, 2], "I_ext": [0.1, -0.2]},
    "initial_conditions": {"random": {"count": 2, "seed": 9, "box": [-2, 2]}},
    "integrator": {"dt": 0.001, "t_max": 1.0, "record_every": 50},
    "outputs": {"format": "csv", "path": ")") + dir.file("det") + R"("}
  })");
  REQUIRE(cmd_simulate(config, {}) == 0);
  const std::string first = slurp(dir.file("det_000.csv"));
  REQUIRE(cmd_simulate(config, {}) == 0);
  CHECK(first == slurp(dir.file("det_000.csv")));
  CHECK(first.size() > 200);
}

TEST_CASE("cmd_kappa seeded random points are byte-identical across runs") {
  TempDir dir;
  const std::string config = hopfield_config(dir, "detrun");
  GlobalOptions global;
  CHECK(cmd_kappa(config, "random:25:777", false, global) == 0);
  const std::string first = slurp(dir.file("detrun_kappa.csv"));
  CHECK(cmd_kappa(config, "random:25:777", false, global) == 0);
  const std::string second = slurp(dir.file("detrun_kappa.csv"));
  CHECK(first == second);
  CHECK(first.size() > 100);
}

TEST_CASE("cmd_kappa accepts grid and file point sources") {
  TempDir dir;
  const std::string config = hopfield_config(dir, "srcrun");
  CHECK(cmd_kappa(config, "grid:3:-1:1", false, {}) == 0);
  std::string body = slurp(dir.file("srcrun_kappa.csv"));
  CHECK(std::count(body.begin(), body.end(), '\n') == 10);  // header + 3^2 points

  const std::string points = write_file(dir, "pts.txt", "0 0\n0.5, -0.5\n# comment\n1 1\n");
  CHECK(cmd_kappa(config, "file:" + points, false, {}) == 0);
  body = slurp(dir.file("srcrun_kappa.csv"));
  CHECK(std::count(body.begin(), body.end(), '\n') == 4);

  CHECK(cmd_kappa(config, "random:5", false, {}) == 1);  // seed missing
  CHECK(cmd_kappa(config, "bogus:1", false, {}) == 1);
}

TEST_CASE("cmd_kappa --at-steady exits 2 when t_max is too short") {
  TempDir dir;
  const std::string config = write_file(dir, "short.json", std::string(R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0, 0.3, 0.3, 0], "R": [1, 2], "I_ext": [0.1, -0.2]},
    "initial_conditions": [[2, -2]],
    "integrator": {"dt": 0.001, "t_max": 0.01},
    "outputs": {"format": "csv", "path": ")") + dir.file("short") + R"("}
  })");
  CHECK(cmd_kappa(config, "", true, {}) == 2);
}

TEST_CASE("cmd_kappa rejects cohen_grossberg configs") {
  TempDir dir;
  const std::string config = write_file(dir, "cg.json", std::string(R"({
    "dimension": 1,
    "potential": {"name": "softplus"},
    "model": {"kind": "cohen_grossberg", "C": [1.0],
              "A": {"form": "constant", "value": 1.0}, "B": {"form": "zero"}},
    "initial_conditions": [[0.5]],
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "csv", "path": ")") + dir.file("cg") + R"("}
  })");
  CHECK(cmd_kappa(config, "", false, {}) == 1);
  CHECK(cmd_simulate(config, {}) == 0);  // but simulate handles it
  CHECK(fs::exists(dir.file("cg_000.csv")));
}

TEST_CASE("cmd_simulate jsonl output") {
  TempDir dir;
  const std::string config = write_file(dir, "jl.json", std::string(R"({
    "dimension": 1,
    "potential": {"name": "softplus"},
    "model": {"kind": "quadratic_identity"},
    "initial_conditions": [[1.0]],
    "integrator": {"dt": 0.01, "t_max": 0.5, "record_every": 10},
    "outputs": {"format": "jsonl", "path": ")") + dir.file("jl") + R"("}
  })");
  CHECK(cmd_simulate(config, {}) == 0);
  const std::string body = slurp(dir.file("jl_000.jsonl"));
  CHECK(body.find("\"termination_reason\":\"t_max_reached\"") != std::string::npos);
  CHECK(body.find("\"kappa\":") != std::string::npos);
}

TEST_CASE("cmd_verify runs each suite") {
  for (const char* suite : {"legendre", "volume"}) {
    CHECK(cmd_verify(suite, {}) == 0);
  }
  CHECK(cmd_verify("no_such_suite", {}) == 1);
}
