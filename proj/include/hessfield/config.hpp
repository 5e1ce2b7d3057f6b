#pragma once

// Run-configuration ingestion: JSON schema, validation with anchored
// diagnostics, deterministic expansion of random initial conditions, and
// semantically idempotent reserialization.

#include <cstdint>
#include <optional>
#include <string>

#include "hessfield/dynamics.hpp"
#include "hessfield/models.hpp"
#include "hessfield/potentials.hpp"

namespace hessfield {

struct OutputSpec {
  enum class Format { Csv, JsonLines };
  Format format = Format::Csv;
  std::string path;
};

/// Descriptors for the Cohen-Grossberg coefficient functions understood by
/// the config format. "constant" and "quadratic_bump" (A = 1 + alpha U^2)
/// cover amplifications; "zero" and "rc_drive" (B = -U/R + I_ext) cover
/// drives.
struct CgFunctionDesc {
  std::string form;
  double value = 1.0;   // constant
  double alpha = 0.0;   // quadratic_bump
  Vec R;                // rc_drive
  Vec I_ext;            // rc_drive
};

struct RandomIcSpec {
  int count = 0;
  std::optional<std::uint64_t> seed;
  double box_lo = -2.0;
  double box_hi = 2.0;
};

struct RunConfig {
  enum class ModelKind { QuadraticIdentity, Hopfield, CohenGrossberg };

  int dimension = 0;

  // potential
  PotentialKind potential_kind = PotentialKind::Softplus;
  double potential_coefficient = 1.0;  // Quadratic only

  // model
  ModelKind model_kind = ModelKind::Hopfield;
  Mat J;       // Hopfield
  Vec R;       // Hopfield
  Vec I_ext;   // Hopfield
  Mat C;       // Cohen-Grossberg
  CgFunctionDesc A_desc;  // Cohen-Grossberg
  CgFunctionDesc B_desc;  // Cohen-Grossberg

  std::vector<Vec> explicit_ics;
  std::optional<RandomIcSpec> random_ics;

  IntegratorConfig integrator;
  OutputSpec outputs;

  ConvexPotential make_potential() const;
  SeparablePotential make_separable() const;
  EnergyFunction make_energy() const;          // ConfigError for CohenGrossberg
  CohenGrossbergSpec make_cohen_grossberg() const;

  /// Explicit list, or the seeded uniform expansion of the random block.
  /// The override wins over the seed stored in the config.
  std::vector<Vec> resolve_initial_conditions(std::optional<std::uint64_t> seed_override) const;
};

/// Parse and validate. Syntax errors are reported with line:column; semantic
/// errors carry the JSON path of the offending field. A random-IC block
/// without a seed is an error unless seed_override supplies one.
RunConfig parse_run_config(const std::string& path,
                           std::optional<std::uint64_t> seed_override = std::nullopt);
RunConfig parse_run_config_text(const std::string& text, const std::string& origin,
                                std::optional<std::uint64_t> seed_override = std::nullopt);

std::string serialize_run_config(const RunConfig& cfg);

}  // namespace hessfield
