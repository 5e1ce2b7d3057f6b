#pragma once

// Seeded property suites behind the `verify` CLI command. Each check
// reports the measured residual next to its tolerance; negative controls
// pass only when the residual exceeds it.

#include <cstdint>
#include <string>
#include <vector>

namespace hessfield {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool expects_exceed = false;
  bool pass = false;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

SuiteResult verify_legendre(std::uint64_t seed);
SuiteResult verify_geometry(std::uint64_t seed);
SuiteResult verify_lyapunov(std::uint64_t seed);
SuiteResult verify_kappa(std::uint64_t seed);
SuiteResult verify_volume(std::uint64_t seed);

/// which: one of legendre|geometry|lyapunov|kappa|volume|all.
/// ConfigError on an unknown suite name.
std::vector<SuiteResult> verify_suites(const std::string& which, std::uint64_t seed);

}  // namespace hessfield
