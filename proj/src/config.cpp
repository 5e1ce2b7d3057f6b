#include "hessfield/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hessfield {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

double get_number(const json& j, const std::string& where) {
  if (!j.is_number()) fail(where, "expected a number");
  return j.get<double>();
}

int get_positive_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long>() <= 0) fail(where, "expected a positive integer");
  return static_cast<int>(j.get<long>());
}

Vec get_vector(const json& j, int expected, const std::string& where) {
  if (!j.is_array()) fail(where, "expected an array");
  if (expected >= 0 && static_cast<int>(j.size()) != expected)
    fail(where, "expected length " + std::to_string(expected) + ", got " +
                    std::to_string(j.size()));
  Vec v;
  v.reserve(j.size());
  for (size_t i = 0; i < j.size(); ++i)
    v.push_back(get_number(j[i], where + "[" + std::to_string(i) + "]"));
  return v;
}

Mat get_matrix(const json& j, int n, const std::string& where) {
  // row-major, length n^2; no implicit broadcasting
  const Vec flat = get_vector(j, n * n, where);
  Mat m(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m(a, b) = flat[static_cast<size_t>(a) * n + b];
  return m;
}

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) fail(where, std::string("missing field '") + key + "'");
  return j.at(key);
}

CgFunctionDesc parse_cg_function(const json& j, int n, const std::string& where) {
  CgFunctionDesc d;
  d.form = require(j, "form", where).get<std::string>();
  if (d.form == "constant") {
    d.value = get_number(require(j, "value", where), where + ".value");
  } else if (d.form == "quadratic_bump") {
    d.alpha = get_number(require(j, "alpha", where), where + ".alpha");
    if (d.alpha < 0.0) fail(where + ".alpha", "must be non-negative");
  } else if (d.form == "rc_drive") {
    d.R = get_vector(require(j, "R", where), n, where + ".R");
    for (int a = 0; a < n; ++a)
      if (!(d.R[a] > 0.0)) fail(where + ".R[" + std::to_string(a) + "]", "must be positive");
    d.I_ext = get_vector(require(j, "I_ext", where), n, where + ".I_ext");
  } else if (d.form != "zero") {
    fail(where + ".form", "unknown form '" + d.form +
                              "' (expected constant|quadratic_bump|rc_drive|zero)");
  }
  return d;
}

std::function<double(int, double)> make_cg_function(const CgFunctionDesc& d) {
  if (d.form == "constant") {
    const double v = d.value;
    return [v](int, double) { return v; };
  }
  if (d.form == "quadratic_bump") {
    const double alpha = d.alpha;
    return [alpha](int, double u) { return 1.0 + alpha * u * u; };
  }
  if (d.form == "rc_drive") {
    const Vec R = d.R, I = d.I_ext;
    return [R, I](int a, double u) { return -u / R[a] + I[a]; };
  }
  return [](int, double) { return 0.0; };  // zero
}

json cg_function_to_json(const CgFunctionDesc& d) {
  json j;
  j["form"] = d.form;
  if (d.form == "constant") j["value"] = d.value;
  if (d.form == "quadratic_bump") j["alpha"] = d.alpha;
  if (d.form == "rc_drive") {
    j["R"] = d.R;
    j["I_ext"] = d.I_ext;
  }
  return j;
}

std::pair<int, int> line_column(const std::string& text, size_t byte) {
  int line = 1, col = 1;
  for (size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

ConvexPotential RunConfig::make_potential() const {
  switch (potential_kind) {
    case PotentialKind::Softplus:
      return ConvexPotential::softplus();
    case PotentialKind::Quadratic:
      return ConvexPotential::quadratic(potential_coefficient);
    case PotentialKind::Custom:
      break;
  }
  throw ConfigError("potential: custom potentials are not expressible in config files");
}

SeparablePotential RunConfig::make_separable() const {
  return SeparablePotential(make_potential(), dimension);
}

EnergyFunction RunConfig::make_energy() const {
  switch (model_kind) {
    case ModelKind::QuadraticIdentity:
      return EnergyFunction::quadratic_identity(dimension);
    case ModelKind::Hopfield:
      return EnergyFunction::hopfield(NetworkSpec(J, R, I_ext), make_potential());
    case ModelKind::CohenGrossberg:
      break;
  }
  throw ConfigError(
      "model: Cohen-Grossberg systems have no dual-coordinate energy here; "
      "use simulate, not kappa");
}

CohenGrossbergSpec RunConfig::make_cohen_grossberg() const {
  if (model_kind != ModelKind::CohenGrossberg)
    throw ConfigError("model: not a Cohen-Grossberg configuration");
  return CohenGrossbergSpec(dimension, make_cg_function(A_desc), make_cg_function(B_desc), C,
                            make_potential());
}

std::vector<Vec> RunConfig::resolve_initial_conditions(
    std::optional<std::uint64_t> seed_override) const {
  if (!random_ics) return explicit_ics;
  const RandomIcSpec& spec = *random_ics;
  std::uint64_t seed;
  if (seed_override)
    seed = *seed_override;
  else if (spec.seed)
    seed = *spec.seed;
  else
    throw ConfigError("initial_conditions.random: seed is required (or pass --seed)");
  Rng rng(seed);
  std::vector<Vec> ics;
  ics.reserve(spec.count);
  for (int i = 0; i < spec.count; ++i)
    ics.push_back(rng.uniform_vec(dimension, spec.box_lo, spec.box_hi));
  return ics;
}

RunConfig parse_run_config(const std::string& path, std::optional<std::uint64_t> seed_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path + ": cannot open config file");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config_text(buf.str(), path, seed_override);
}

RunConfig parse_run_config_text(const std::string& text, const std::string& origin,
                                std::optional<std::uint64_t> seed_override) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& err) {
    const auto [line, col] = line_column(text, err.byte);
    throw ConfigError(origin + ":" + std::to_string(line) + ":" + std::to_string(col) +
                      ": JSON parse error: " + err.what());
  }

  RunConfig cfg;
  cfg.dimension = get_positive_int(require(j, "dimension", origin), origin + ": dimension");
  const int n = cfg.dimension;

  // potential
  {
    const json& jp = require(j, "potential", origin);
    const std::string name = require(jp, "name", "potential").get<std::string>();
    if (name == "softplus") {
      cfg.potential_kind = PotentialKind::Softplus;
    } else if (name == "quadratic") {
      cfg.potential_kind = PotentialKind::Quadratic;
      cfg.potential_coefficient =
          get_number(require(jp, "coefficient", "potential"), "potential.coefficient");
      if (!(cfg.potential_coefficient > 0.0)) fail("potential.coefficient", "must be positive");
    } else {
      fail("potential.name", "unknown potential '" + name + "' (expected softplus|quadratic)");
    }
  }

  // model
  {
    const json& jm = require(j, "model", origin);
    const std::string kind = require(jm, "kind", "model").get<std::string>();
    if (kind == "hopfield") {
      cfg.model_kind = RunConfig::ModelKind::Hopfield;
      cfg.J = get_matrix(require(jm, "J", "model"), n, "model.J");
      cfg.R = get_vector(require(jm, "R", "model"), n, "model.R");
      cfg.I_ext = get_vector(require(jm, "I_ext", "model"), n, "model.I_ext");
      try {
        NetworkSpec probe(cfg.J, cfg.R, cfg.I_ext);  // symmetry and positivity checks
      } catch (const ModelError& err) {
        fail("model", err.what());
      }
    } else if (kind == "quadratic_identity") {
      cfg.model_kind = RunConfig::ModelKind::QuadraticIdentity;
    } else if (kind == "cohen_grossberg") {
      cfg.model_kind = RunConfig::ModelKind::CohenGrossberg;
      cfg.C = get_matrix(require(jm, "C", "model"), n, "model.C");
      cfg.A_desc = parse_cg_function(require(jm, "A", "model"), n, "model.A");
      cfg.B_desc = parse_cg_function(require(jm, "B", "model"), n, "model.B");
      try {
        cfg.make_cohen_grossberg();
      } catch (const ModelError& err) {
        fail("model", err.what());
      }
    } else {
      fail("model.kind",
           "unknown model '" + kind + "' (expected hopfield|quadratic_identity|cohen_grossberg)");
    }
  }

  // initial conditions
  {
    const json& ji = require(j, "initial_conditions", origin);
    if (ji.is_array()) {
      for (size_t i = 0; i < ji.size(); ++i)
        cfg.explicit_ics.push_back(
            get_vector(ji[i], n, "initial_conditions[" + std::to_string(i) + "]"));
      if (cfg.explicit_ics.empty()) fail("initial_conditions", "at least one is required");
    } else if (ji.is_object() && ji.contains("random")) {
      const json& jr = ji.at("random");
      RandomIcSpec spec;
      spec.count = get_positive_int(require(jr, "count", "initial_conditions.random"),
                                    "initial_conditions.random.count");
      if (jr.contains("seed")) {
        if (!jr.at("seed").is_number_unsigned())
          fail("initial_conditions.random.seed", "expected a non-negative integer");
        spec.seed = jr.at("seed").get<std::uint64_t>();
      }
      if (jr.contains("box")) {
        const Vec box = get_vector(jr.at("box"), 2, "initial_conditions.random.box");
        if (!(box[0] < box[1])) fail("initial_conditions.random.box", "needs box[0] < box[1]");
        spec.box_lo = box[0];
        spec.box_hi = box[1];
      }
      if (!spec.seed && !seed_override)
        fail("initial_conditions.random", "seed is required (or pass --seed)");
      cfg.random_ics = spec;
    } else {
      fail("initial_conditions", "expected an array of vectors or {\"random\": {...}}");
    }
  }

  // integrator
  {
    const json& jg = require(j, "integrator", origin);
    cfg.integrator.dt = get_number(require(jg, "dt", "integrator"), "integrator.dt");
    cfg.integrator.t_max = get_number(require(jg, "t_max", "integrator"), "integrator.t_max");
    if (jg.contains("steady_tol"))
      cfg.integrator.steady_tol = get_number(jg.at("steady_tol"), "integrator.steady_tol");
    if (jg.contains("record_every"))
      cfg.integrator.record_every =
          get_positive_int(jg.at("record_every"), "integrator.record_every");
    try {
      cfg.integrator.validate();
    } catch (const ConfigError& err) {
      fail("integrator", err.what());
    }
  }

  // outputs
  {
    const json& jo = require(j, "outputs", origin);
    const std::string fmt = require(jo, "format", "outputs").get<std::string>();
    if (fmt == "csv")
      cfg.outputs.format = OutputSpec::Format::Csv;
    else if (fmt == "jsonl")
      cfg.outputs.format = OutputSpec::Format::JsonLines;
    else
      fail("outputs.format", "unknown format '" + fmt + "' (expected csv|jsonl)");
    cfg.outputs.path = require(jo, "path", "outputs").get<std::string>();
    if (cfg.outputs.path.empty()) fail("outputs.path", "must be non-empty");
  }

  return cfg;
}

std::string serialize_run_config(const RunConfig& cfg) {
  json j;
  j["dimension"] = cfg.dimension;

  if (cfg.potential_kind == PotentialKind::Softplus) {
    j["potential"] = {{"name", "softplus"}};
  } else {
    j["potential"] = {{"name", "quadratic"}, {"coefficient", cfg.potential_coefficient}};
  }

  json jm;
  switch (cfg.model_kind) {
    case RunConfig::ModelKind::Hopfield:
      jm["kind"] = "hopfield";
      jm["J"] = cfg.J.data();
      jm["R"] = cfg.R;
      jm["I_ext"] = cfg.I_ext;
      break;
    case RunConfig::ModelKind::QuadraticIdentity:
      jm["kind"] = "quadratic_identity";
      break;
    case RunConfig::ModelKind::CohenGrossberg:
      jm["kind"] = "cohen_grossberg";
      jm["C"] = cfg.C.data();
      jm["A"] = cg_function_to_json(cfg.A_desc);
      jm["B"] = cg_function_to_json(cfg.B_desc);
      break;
  }
  j["model"] = jm;

  if (cfg.random_ics) {
    json jr;
    jr["count"] = cfg.random_ics->count;
    if (cfg.random_ics->seed) jr["seed"] = *cfg.random_ics->seed;
    jr["box"] = Vec{cfg.random_ics->box_lo, cfg.random_ics->box_hi};
    j["initial_conditions"] = {{"random", jr}};
  } else {
    j["initial_conditions"] = cfg.explicit_ics;
  }

  j["integrator"] = {{"dt", cfg.integrator.dt},
                     {"t_max", cfg.integrator.t_max},
                     {"steady_tol", cfg.integrator.steady_tol},
                     {"record_every", cfg.integrator.record_every}};
  j["outputs"] = {{"format", cfg.outputs.format == OutputSpec::Format::Csv ? "csv" : "jsonl"},
                  {"path", cfg.outputs.path}};
  return j.dump(2);
}

}  // namespace hessfield
