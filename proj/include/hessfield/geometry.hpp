#pragma once

// The Hessian metric induced by a convex potential, its dual-coordinate
// expression, volume density, the Laplace-Beltrami operator on functions,
// and numerical exterior-calculus checks (closedness of lowered fields,
// co-derivatives).

#include "hessfield/common.hpp"
#include "hessfield/potentials.hpp"

namespace hessfield {

/// Metric data of a separable Hessian metric at one point: diagonal
/// components g_aa = psi''(U^a), their inverses, the volume density
/// sqrt(prod g_aa), and the third-derivative chain psi'''(U^a) entering
/// derivatives of the density.
struct HessianMetricPoint {
  Vec point_U;
  Vec g_diag;
  Vec g_inv;
  double sqrt_det = 0.0;
  Vec third;
};

/// GeometryError if any psi''(U^a) is non-positive or non-finite.
HessianMetricPoint metric_at(const SeparablePotential& sp, const Vec& U);

/// Dense metric data for the general (non-separable) machinery.
struct MetricData {
  Mat g;
  Mat g_inv;
  double sqrt_det = 0.0;
};

using MetricField = std::function<MetricData(const Vec&)>;
using OneFormField = std::function<Vec(const Vec&)>;  // components omega_b at U

/// Dense view of a separable metric, for exercising the general-path code.
MetricField metric_field_of(const SeparablePotential& sp);

/// Metric of an arbitrary convex potential Psi, with the Hessian computed
/// by central finite differences (step h0 per axis, scaled by max(1,|U_a|)).
/// GeometryError if the finite-difference Hessian is not positive definite.
MetricField metric_field_from_hessian(ScalarField Psi, double h0 = 1e-4);

/// Max over a,b of |g^ab - d2 Psi*/dV_a dV_b| with the dual Hessian taken
/// by central finite differences of the Legendre dual at V = to_dual(U).
/// Separable duality puts this near zero; the contract is <= 1e-5. The
/// default step balances second-difference rounding against the growth of
/// the dual fourth derivative near the dual-domain boundary.
double dual_metric_check(const SeparablePotential& sp, const Vec& U, double h0 = 3e-5);

struct FdOptions {
  double h0 = 1e-4;         // base step; per-axis step is h0 * max(1, |U_a|)
  bool richardson = false;  // one extrapolation level on the stencil result
};

/// Laplace-Beltrami of a scalar field in the coordinate divergence form
/// (1/sqrt|g|) d_a (sqrt|g| g^ab d_b f), with analytic metric data and
/// central finite differences of f. Diagonal fast path.
double laplace_beltrami(const SeparablePotential& sp, const ScalarField& f, const Vec& U,
                        FdOptions opt = {});

/// General form against a dense metric field; metric first derivatives are
/// finite-differenced on the field, f via central (and mixed) differences.
double laplace_beltrami(const MetricField& metric, const ScalarField& f, const Vec& U,
                        FdOptions opt = {});

/// Lower a vector field with the separable metric: omega_b = g_bb X^b.
OneFormField lower_with_metric(const SeparablePotential& sp, const VectorFn& field);

/// Max over a<b of |d_a omega_b - d_b omega_a| by central differences.
/// Exact one-forms give ~0; fields lowered from non-gradient dynamics do not.
double one_form_closedness(const OneFormField& omega, const Vec& U, double h0 = 1e-4);

/// Co-derivative of a one-form, (1/sqrt|g|) d_a (sqrt|g| g^ab omega_b),
/// sign fixed so that applied to the lowered model field it returns the
/// phase-space compressibility.
double coderivative_of(const OneFormField& omega, const SeparablePotential& sp, const Vec& U,
                       FdOptions opt = {});
double coderivative_of(const OneFormField& omega, const MetricField& metric, const Vec& U,
                       FdOptions opt = {});

}  // namespace hessfield
