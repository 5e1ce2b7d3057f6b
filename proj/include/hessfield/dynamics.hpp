#pragma once

// Fixed-step RK4 time integration with Lyapunov monitoring, steady-state
// detection and trajectory recording.

#include <string>

#include "hessfield/common.hpp"
#include "hessfield/models.hpp"

namespace hessfield {

struct IntegratorConfig {
  double dt = 1e-3;
  double t_max = 10.0;
  double steady_tol = 1e-10;  // stop when ||Xdot||_inf falls below this
  int record_every = 1;

  void validate() const;  // ConfigError on nonsense
};

enum class TerminationReason { TMaxReached, SteadyState, NumericalFailure };

struct TrajectoryRow {
  double t;
  Vec U;
  Vec V;
  double H;
  double dHdt;
  double kappa;
  double field_norm_g;  // sqrt(g(X,X)) >= 0
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  TerminationReason termination_reason = TerminationReason::TMaxReached;
  long failure_step = -1;  // step index of the offending transition, if any
  std::string failure_detail;
};

const char* to_string(TerminationReason r);

/// One classical RK4 step of du/dt = f(u).
Vec rk4_step(const VectorFn& f, const Vec& u, double dt);

/// Integrate the generalized Hopfield flow dU/dt = -dH/dV from U0. Records
/// every record_every-th step plus the terminal step; stops on steady state
/// (||Xdot||_inf < steady_tol, checked before stepping, so a zero-field
/// start terminates immediately), on t_max, or on failure. Every recorded
/// row must keep H non-increasing within 1e-9 slack; a violation flags the
/// run NumericalFailure with the offending step index.
TrajectoryRecord integrate(const EnergyFunction& energy, const SeparablePotential& sp,
                           const Vec& U0, const IntegratorConfig& cfg);

/// Cohen-Grossberg variant. The H and dHdt columns hold H' and its closed-
/// form rate; kappa holds the divergence-route compressibility of the flow
/// against the psi-metric volume (no closed form exists for non-constant A).
TrajectoryRecord integrate_cohen_grossberg(const CohenGrossbergSpec& spec, const Vec& U0,
                                           const IntegratorConfig& cfg);

/// Max over consecutive recorded rows of H_{k+1} - H_k (0 when fewer than
/// two rows). The audit passes when this is <= 1e-9.
double lyapunov_audit(const TrajectoryRecord& record);

}  // namespace hessfield
