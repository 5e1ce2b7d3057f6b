// Command-line front end: simulate | kappa | verify.

#include <CLI11.hpp>

#include "hessfield/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generalized Hopfield dynamics on Hessian manifolds: simulation, "
               "three-route phase-space compressibility, and verification suites"};
  app.require_subcommand(1);

  hessfield::GlobalOptions global;
  std::uint64_t seed_value = 0;
  auto* seed_opt = app.add_option("--seed", seed_value, "Seed for random points/initial conditions");
  app.add_option("--jobs", global.jobs, "Worker count (default: available parallelism)");

  std::string config_path;
  auto* simulate = app.add_subcommand("simulate", "Integrate trajectories from a config file");
  simulate->add_option("config", config_path, "JSON run configuration")->required();

  std::string kappa_config, points_spec;
  bool at_steady = false;
  auto* kappa = app.add_subcommand("kappa", "Report compressibility by all three routes");
  kappa->add_option("config", kappa_config, "JSON run configuration")->required();
  kappa->add_option("--points", points_spec,
                    "Point source: file:PATH | grid:k[:lo:hi] | random:k[:seed[:lo:hi]] "
                    "(default: the config's initial conditions)");
  kappa->add_flag("--at-steady", at_steady, "Relax each point to a steady state first");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run seeded property suites");
  verify->add_option("suite", suite, "legendre|geometry|lyapunov|kappa|volume|all")->required();

  CLI11_PARSE(app, argc, argv);
  if (seed_opt->count() > 0) global.seed = seed_value;

  if (*simulate) return hessfield::cmd_simulate(config_path, global);
  if (*kappa) return hessfield::cmd_kappa(kappa_config, points_spec, at_steady, global);
  return hessfield::cmd_verify(suite, global);
}
