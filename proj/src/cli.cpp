#include "hessfield/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hessfield/batch.hpp"
#include "hessfield/config.hpp"
#include "hessfield/output.hpp"
#include "hessfield/verify.hpp"

namespace hessfield {

namespace {

constexpr double kResidualBudget = 1e-4;  // per point: 1e-4 * max(1, |kappa|)
constexpr std::uint64_t kDefaultVerifySeed = 20240901ull;

int effective_jobs(const GlobalOptions& global) {
  return global.jobs > 0 ? global.jobs : default_jobs();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse number '" + s + "'");
  }
}

long parse_long(const std::string& s, const std::string& where) {
  try {
    size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(where + ": cannot parse integer '" + s + "'");
  }
}

std::vector<Vec> points_from_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw ConfigError("points file '" + path + "': cannot open");
  std::vector<Vec> points;
  std::string line;
  size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream row(line);
    Vec p;
    double x;
    while (row >> x) p.push_back(x);
    if (p.empty()) continue;
    if (static_cast<int>(p.size()) != n)
      throw ConfigError("points file '" + path + "' line " + std::to_string(lineno) +
                        ": expected " + std::to_string(n) + " numbers, got " +
                        std::to_string(p.size()));
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ConfigError("points file '" + path + "': no points");
  return points;
}

std::vector<Vec> grid_points(int per_axis, double lo, double hi, int n) {
  if (per_axis < 1) throw ConfigError("points grid: need at least one node per axis");
  double total = 1;
  for (int a = 0; a < n; ++a) total *= per_axis;
  if (total > 1e6) throw ConfigError("points grid: " + std::to_string(total) + " nodes is too many");
  std::vector<Vec> points;
  points.reserve(static_cast<size_t>(total));
  const auto node = [&](int k) {
    return per_axis == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * k / (per_axis - 1);
  };
  std::vector<int> counter(n, 0);
  while (true) {
    Vec p(n);
    for (int a = 0; a < n; ++a) p[a] = node(counter[a]);
    points.push_back(std::move(p));
    int a = 0;
    for (; a < n; ++a) {
      if (++counter[a] < per_axis) break;
      counter[a] = 0;
    }
    if (a == n) break;
  }
  return points;
}

std::vector<Vec> resolve_points(const std::string& spec, const RunConfig& cfg,
                                const GlobalOptions& global) {
  if (spec.empty()) return cfg.resolve_initial_conditions(global.seed);
  const std::vector<std::string> parts = split(spec, ':');
  const std::string& kind = parts[0];
  if (kind == "file") {
    if (parts.size() != 2) throw ConfigError("points: expected file:PATH");
    return points_from_file(parts[1], cfg.dimension);
  }
  if (kind == "grid") {
    if (parts.size() != 2 && parts.size() != 4)
      throw ConfigError("points: expected grid:k or grid:k:lo:hi");
    const long k = parse_long(parts[1], "points grid");
    double lo = -2.0, hi = 2.0;
    if (parts.size() == 4) {
      lo = parse_double(parts[2], "points grid");
      hi = parse_double(parts[3], "points grid");
      if (!(lo < hi)) throw ConfigError("points grid: needs lo < hi");
    }
    return grid_points(static_cast<int>(k), lo, hi, cfg.dimension);
  }
  if (kind == "random") {
    if (parts.size() < 2 || parts.size() == 4 || parts.size() > 5)
      throw ConfigError("points: expected random:k[:seed[:lo:hi]]");
    const long k = parse_long(parts[1], "points random");
    if (k < 1) throw ConfigError("points random: need at least one point");
    std::optional<std::uint64_t> seed = global.seed;
    if (parts.size() >= 3) seed = static_cast<std::uint64_t>(parse_long(parts[2], "points random"));
    if (!seed) throw ConfigError("points random: seed is required (random:k:seed or --seed)");
    double lo = -3.0, hi = 3.0;
    if (parts.size() == 5) {
      lo = parse_double(parts[3], "points random");
      hi = parse_double(parts[4], "points random");
      if (!(lo < hi)) throw ConfigError("points random: needs lo < hi");
    }
    Rng rng(*seed);
    std::vector<Vec> points;
    points.reserve(static_cast<size_t>(k));
    for (long i = 0; i < k; ++i) points.push_back(rng.uniform_vec(cfg.dimension, lo, hi));
    return points;
  }
  throw ConfigError("points: unknown source '" + kind + "' (expected file|grid|random)");
}

void write_stream(const std::string& path, const std::function<void(std::ostream&)>& body) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + path + "'");
  body(out);
  if (!out) throw NumericError("write failed for '" + path + "'");
}

}  // namespace

int cmd_simulate(const std::string& config_path, const GlobalOptions& global) {
  RunConfig cfg;
  std::vector<Vec> ics;
  try {
    cfg = parse_run_config(config_path, global.seed);
    ics = cfg.resolve_initial_conditions(global.seed);
  } catch (const Error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  }

  const int jobs = effective_jobs(global);
  std::vector<TrajectoryRecord> records;
  try {
    if (cfg.model_kind == RunConfig::ModelKind::CohenGrossberg) {
      records = integrate_ensemble_cg(cfg.make_cohen_grossberg(), ics, cfg.integrator, jobs);
    } else {
      records =
          integrate_ensemble(cfg.make_energy(), cfg.make_separable(), ics, cfg.integrator, jobs);
    }
    for (size_t i = 0; i < records.size(); ++i) {
      const std::string path = output_file_name(cfg.outputs, i);
      write_stream(path, [&](std::ostream& os) {
        if (cfg.outputs.format == OutputSpec::Format::Csv)
          write_trajectory_csv(os, records[i], cfg.dimension);
        else
          write_trajectory_jsonl(os, records[i]);
      });
    }
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const Error& err) {
    std::cerr << "run error: " << err.what() << "\n";
    return 2;
  }

  int failures = 0;
  for (size_t i = 0; i < records.size(); ++i) {
    const TrajectoryRecord& rec = records[i];
    std::printf("trajectory %03zu: %s, %zu rows", i, to_string(rec.termination_reason),
                rec.rows.size());
    if (!rec.rows.empty())
      std::printf(", t_end = %s, H_end = %s", format_g17(rec.rows.back().t).c_str(),
                  format_g17(rec.rows.back().H).c_str());
    if (rec.termination_reason == TerminationReason::NumericalFailure) {
      ++failures;
      std::printf(" [step %ld: %s]", rec.failure_step, rec.failure_detail.c_str());
    }
    std::printf(" -> %s\n", output_file_name(cfg.outputs, i).c_str());
  }
  return failures == 0 ? 0 : 2;
}

int cmd_kappa(const std::string& config_path, const std::string& points_spec, bool at_steady,
              const GlobalOptions& global) {
  RunConfig cfg;
  std::vector<Vec> points;
  EnergyFunction energy = EnergyFunction::quadratic_identity(1);
  try {
    cfg = parse_run_config(config_path, global.seed);
    energy = cfg.make_energy();  // rejects Cohen-Grossberg configs
    points = resolve_points(points_spec, cfg, global);
  } catch (const Error& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  }

  const SeparablePotential sp = cfg.make_separable();
  try {
    if (at_steady) {
      for (Vec& p : points) {
        IntegratorConfig relax = cfg.integrator;
        relax.record_every = 1 << 30;
        const TrajectoryRecord rec = integrate(energy, sp, p, relax);
        if (rec.termination_reason != TerminationReason::SteadyState)
          throw NumericError("point did not reach a steady state by t_max (" +
                             std::string(to_string(rec.termination_reason)) + ")");
        p = rec.rows.back().U;
      }
    }

    const std::vector<KappaReport> reports =
        kappa_reports_batch(energy, sp, points, effective_jobs(global));

    const std::string path = kappa_file_name(cfg.outputs);
    write_stream(path, [&](std::ostream& os) {
      if (cfg.outputs.format == OutputSpec::Format::Csv)
        write_kappa_csv(os, reports, cfg.dimension);
      else
        write_kappa_jsonl(os, reports);
    });

    double worst = 0.0;
    size_t offenders = 0;
    for (const KappaReport& r : reports) {
      const double budget = kResidualBudget * std::max(1.0, std::abs(r.closed_form));
      worst = std::max(worst, r.max_pairwise_residual / budget);
      if (r.max_pairwise_residual > budget) ++offenders;
    }
    std::printf("kappa: %zu points -> %s, worst residual at %.3g of budget\n", reports.size(),
                path.c_str(), worst);
    if (offenders > 0) {
      std::fprintf(stderr, "kappa: %zu point(s) exceed the cross-route residual budget\n",
                   offenders);
      return 2;
    }
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  } catch (const Error& err) {
    std::cerr << "run error: " << err.what() << "\n";
    return 2;
  }
  return 0;
}

int cmd_verify(const std::string& suite, const GlobalOptions& global) {
  std::vector<SuiteResult> results;
  try {
    results = verify_suites(suite, global.seed.value_or(kDefaultVerifySeed));
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << "\n";
    return 1;
  }

  bool all_pass = true;
  for (const SuiteResult& sr : results) {
    std::printf("suite %s\n", sr.suite.c_str());
    for (const CheckResult& c : sr.checks) {
      std::printf("  [%s] %-68s measured %-13.4g %s %.4g\n", c.pass ? "PASS" : "FAIL",
                  c.name.c_str(), c.measured, c.expects_exceed ? "> " : "<=", c.tolerance);
      all_pass = all_pass && c.pass;
    }
  }
  std::printf("verify: %s\n", all_pass ? "all checks passed" : "FAILURES present");
  return all_pass ? 0 : 2;
}

}  // namespace hessfield
