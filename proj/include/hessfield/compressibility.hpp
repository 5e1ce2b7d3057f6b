#pragma once

// Phase-space compressibility computed three independent ways (separable
// closed form, Laplace-Beltrami route, finite-difference divergence oracle),
// the warm-up demo fields, and the volume-contraction ledger that checks
// the evolved Riemannian volume of a cell against the integrated kappa.

#include <string>

#include "hessfield/common.hpp"
#include "hessfield/geometry.hpp"
#include "hessfield/models.hpp"

namespace hessfield {

/// Closed-form route for separable potentials:
///   kappa = -sum_a (1/psi'') [ (1/2) psi''' dH/dV_a + (psi'')^2 d2H/dV_a^2 ].
double kappa_closed_form(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U);

/// -Laplace-Beltrami of H(V(U)) under the metric of the potential.
double kappa_laplacian(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U,
                       FdOptions opt = {});

/// General-metric variant: H_of_U must already be composed with the dual map.
double kappa_laplacian(const ScalarField& H_of_U, const MetricField& metric, const Vec& U,
                       FdOptions opt = {});

/// The independent oracle: weighted divergence of the flow field,
/// (1/sqrt|g|) sum_a d_a (sqrt|g| Xdot^a), by central differences.
double kappa_divergence_oracle(const VectorFn& field,
                               const std::function<double(const Vec&)>& sqrt_det, const Vec& U,
                               FdOptions opt = {});

struct KappaReport {
  Vec point_U;
  double closed_form = 0.0;
  double laplacian = 0.0;
  double divergence = 0.0;
  double max_pairwise_residual = 0.0;
};

KappaReport kappa_report(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U,
                         FdOptions opt = {});

/// A flow with everything the volume machinery needs: the field, its
/// Jacobian, the volume density of the reference form, and the pointwise
/// compressibility.
struct FlowField {
  int n = 0;
  VectorFn field;
  std::function<Mat(const Vec&)> jacobian;
  std::function<double(const Vec&)> sqrt_det;
  std::function<double(const Vec&)> kappa;
};

/// Model flow on the Hessian manifold of sp, with analytic Jacobian
/// dXdot^a/dU^b = -H_{V_a V_b} psi''(U^b) and the closed-form kappa.
FlowField model_flow(const EnergyFunction& energy, const SeparablePotential& sp);

/// Demo fields. The linear flow Xdot^a = -rate_a U^a on Euclidean volume
/// contracts at the constant rate -sum_a rate_a; the planar rotation
/// (q,p) -> (p,-q) preserves Euclidean volume exactly.
FlowField linear_flow(const Vec& rates);
FlowField planar_rotation_flow();

/// Volume-contraction ledger: co-integrates the variational equation
/// dM/dt = (dXdot/dU) M alongside the state with the same RK4 steps and
/// compares ln[det M(T) sqrt|g(U(T))| / sqrt|g(U0)|] against the composite
/// Simpson integral of kappa over the accepted steps.
struct VolumeLedger {
  enum class Status { Completed, Failed };

  struct Row {
    double t;
    double log_det_M;
    double kappa;
  };

  Status status = Status::Completed;
  std::string failure_detail;
  double T = 0.0;
  double dt = 0.0;  // actual step (input dt shrunk to divide T exactly)
  int steps = 0;
  double log_volume_ratio = 0.0;
  double kappa_integral = 0.0;
  double abs_discrepancy = 0.0;
  double rel_discrepancy = 0.0;  // abs / max(|lhs|, |rhs|, 1e-6)
  std::vector<Row> rows;
};

VolumeLedger volume_contraction_run(const FlowField& flow, const Vec& U0, double T, double dt);

/// Convenience overload for model flows.
VolumeLedger volume_contraction_run(const EnergyFunction& energy, const SeparablePotential& sp,
                                    const Vec& U0, double T, double dt);

}  // namespace hessfield
