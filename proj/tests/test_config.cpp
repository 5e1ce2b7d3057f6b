#include <doctest.h>

#include <string>

#include "hessfield/config.hpp"
#include "hessfield/output.hpp"

using namespace hessfield;

namespace {

const char* kHopfieldConfig = R"({
  "dimension": 2,
  "potential": {"name": "softplus"},
  "model": {"kind": "hopfield", "J": [0, 0.3, 0.3, 0], "R": [1, 2], "I_ext": [0.1, -0.2]},
  "initial_conditions": [[0.5, -0.5], [1, 1]],
  "integrator": {"dt": 0.001, "t_max": 5.0, "record_every": 100},
  "outputs": {"format": "csv", "path": "out/run"}
})";

}  // namespace

TEST_CASE("hopfield config parses") {
  const RunConfig cfg = parse_run_config_text(kHopfieldConfig, "test");
  CHECK(cfg.dimension == 2);
  CHECK(cfg.model_kind == RunConfig::ModelKind::Hopfield);
  CHECK(cfg.J(0, 1) == 0.3);
  CHECK(cfg.explicit_ics.size() == 2);
  CHECK(cfg.integrator.record_every == 100);
  CHECK(cfg.outputs.format == OutputSpec::Format::Csv);
  CHECK_NOTHROW(cfg.make_energy());
}

TEST_CASE("parse errors carry line and column") {
  const std::string broken = "{\n  \"dimension\": 2,\n  oops\n}";
  try {
    parse_run_config_text(broken, "bad.json");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("bad.json:3") != std::string::npos);
    CHECK(what.find("parse error") != std::string::npos);
  }
}

TEST_CASE("asymmetric J is rejected with the field named") {
  const std::string text = R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0, 0.5, 0.2, 0], "R": [1, 1], "I_ext": [0, 0]},
    "initial_conditions": [[0, 0]],
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "csv", "path": "x"}
  })";
  try {
    parse_run_config_text(text, "test");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    const std::string what = err.what();
    CHECK(what.find("model") != std::string::npos);
    CHECK(what.find("not symmetric") != std::string::npos);
  }
}

TEST_CASE("dimension mismatches are anchored to their fields") {
  const std::string text = R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "hopfield", "J": [0, 0, 0, 0], "R": [1], "I_ext": [0, 0]},
    "initial_conditions": [[0, 0]],
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "csv", "path": "x"}
  })";
  try {
    parse_run_config_text(text, "test");
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("model.R") != std::string::npos);
  }
}

TEST_CASE("random initial conditions require a seed") {
  const std::string text = R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {"kind": "quadratic_identity"},
    "initial_conditions": {"random": {"count": 3}},
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "csv", "path": "x"}
  })";
  CHECK_THROWS_AS(parse_run_config_text(text, "test"), ConfigError);
  // a seed override satisfies the requirement
  const RunConfig cfg = parse_run_config_text(text, "test", 42ull);
  const auto ics = cfg.resolve_initial_conditions(42ull);
  CHECK(ics.size() == 3);
  // and the expansion is deterministic
  const auto again = cfg.resolve_initial_conditions(42ull);
  for (size_t i = 0; i < ics.size(); ++i)
    for (int a = 0; a < 2; ++a) CHECK(ics[i][a] == again[i][a]);
}

TEST_CASE("serialize-parse-serialize is idempotent") {
  for (const char* text : {kHopfieldConfig}) {
    const RunConfig once = parse_run_config_text(text, "test");
    const std::string s1 = serialize_run_config(once);
    const RunConfig twice = parse_run_config_text(s1, "reparse");
    const std::string s2 = serialize_run_config(twice);
    CHECK(s1 == s2);
  }

  // awkward doubles survive the round trip
  RunConfig cfg = parse_run_config_text(kHopfieldConfig, "test");
  cfg.integrator.dt = 0.1 + 0.2;  // 0.30000000000000004
  cfg.R = {1.0 / 3.0, 2.0};
  const RunConfig back = parse_run_config_text(serialize_run_config(cfg), "reparse");
  CHECK(back.integrator.dt == cfg.integrator.dt);
  CHECK(back.R[0] == cfg.R[0]);
}

TEST_CASE("cohen_grossberg config builds a spec") {
  const std::string text = R"({
    "dimension": 2,
    "potential": {"name": "softplus"},
    "model": {
      "kind": "cohen_grossberg",
      "C": [1.0, 0.2, 0.2, 0.8],
      "A": {"form": "quadratic_bump", "alpha": 0.1},
      "B": {"form": "rc_drive", "R": [1, 2], "I_ext": [0.1, -0.2]}
    },
    "initial_conditions": [[0.5, 0.5]],
    "integrator": {"dt": 0.001, "t_max": 1.0},
    "outputs": {"format": "jsonl", "path": "x"}
  })";
  const RunConfig cfg = parse_run_config_text(text, "test");
  const CohenGrossbergSpec cg = cfg.make_cohen_grossberg();
  CHECK(cg.A(0, 2.0) == doctest::Approx(1.4));
  CHECK(cg.B(1, 1.0) == doctest::Approx(-0.7));
  CHECK_THROWS_AS(cfg.make_energy(), ConfigError);  // no dual-coordinate energy
}

TEST_CASE("trajectory CSV header is pinned") {
  CHECK(trajectory_csv_header(2) == "t,U_1,U_2,V_1,V_2,H,dHdt,kappa,field_norm_g");
  CHECK(trajectory_csv_header(1) == "t,U_1,V_1,H,dHdt,kappa,field_norm_g");
}

TEST_CASE("17-significant-digit formatting round-trips") {
  for (const double x : {0.1 + 0.2, 1.0 / 3.0, -1.75, 6.02e23, 1e-300}) {
    CHECK(std::stod(format_g17(x)) == x);
  }
}

TEST_CASE("output file naming") {
  OutputSpec spec;
  spec.format = OutputSpec::Format::Csv;
  spec.path = "runs/exp.csv";
  CHECK(output_file_name(spec, 0) == "runs/exp_000.csv");
  CHECK(output_file_name(spec, 12) == "runs/exp_012.csv");
  CHECK(kappa_file_name(spec) == "runs/exp_kappa.csv");
  spec.format = OutputSpec::Format::JsonLines;
  spec.path = "runs/exp";
  CHECK(output_file_name(spec, 3) == "runs/exp_003.jsonl");
}
