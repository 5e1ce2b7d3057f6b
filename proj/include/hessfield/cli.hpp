#pragma once

// Command implementations behind the CLI front end. Exit codes: 0 success,
// 1 configuration error, 2 verification or numerical failure.

#include <cstdint>
#include <optional>
#include <string>

namespace hessfield {

struct GlobalOptions {
  int jobs = 0;  // 0 means available parallelism
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const std::string& config_path, const GlobalOptions& global);

/// points_spec: empty (use the config's initial conditions), "file:PATH",
/// "grid:k[:lo:hi]" or "random:k[:seed[:lo:hi]]". With at_steady each point
/// is first relaxed to a steady state under the config's integrator.
int cmd_kappa(const std::string& config_path, const std::string& points_spec, bool at_steady,
              const GlobalOptions& global);

int cmd_verify(const std::string& suite, const GlobalOptions& global);

}  // namespace hessfield
