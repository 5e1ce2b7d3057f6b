#pragma once

// The model catalog: energy functions H(V), the induced vector fields
// dU/dt = -dH/dV, the Hopfield network energy, and the restricted
// Cohen-Grossberg class with its Lyapunov function.

#include <optional>

#include "hessfield/common.hpp"
#include "hessfield/potentials.hpp"

namespace hessfield {

/// Symmetric couplings J, positive resistances R and external currents
/// I_ext of a Hopfield network. The constructor rejects any J with
/// max |J_ab - J_ba| > 1e-12 rather than symmetrizing: symmetry is
/// load-bearing for the existence of the energy.
struct NetworkSpec {
  int n = 0;
  Mat J;
  Vec R;
  Vec I_ext;

  NetworkSpec(Mat J_in, Vec R_in, Vec I_ext_in);
};

enum class EnergyKind { QuadraticIdentity, Hopfield, CustomV };

/// A Lyapunov energy as a function of the dual coordinates V, with gradient
/// and Hessian access. Gradient/Hessian calls accept an optional primal
/// point U to avoid round-tripping through the inverse activation.
class EnergyFunction {
 public:
  static EnergyFunction quadratic_identity(int n);
  static EnergyFunction hopfield(NetworkSpec spec, ConvexPotential p);

  struct CustomVSpec {
    int n = 0;
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    std::function<Mat(const Vec&)> hess;  // optional; finite differences of grad if empty
  };
  static EnergyFunction custom(CustomVSpec spec);

  EnergyKind kind() const { return kind_; }
  int dimension() const { return n_; }
  const NetworkSpec* network() const { return network_ ? &*network_ : nullptr; }

  double value(const Vec& V) const;
  Vec grad(const Vec& V, const Vec* U_hint = nullptr) const;
  Vec hess_diag(const Vec& V, const Vec* U_hint = nullptr) const;
  Mat hess(const Vec& V, const Vec* U_hint = nullptr) const;

 private:
  EnergyFunction() = default;
  void require_dimension(const Vec& V) const;

  EnergyKind kind_ = EnergyKind::QuadraticIdentity;
  int n_ = 0;
  std::optional<NetworkSpec> network_;
  std::optional<ConvexPotential> potential_;  // Hopfield only
  CustomVSpec hooks_;
};

/// dU/dt = -dH/dV evaluated at V = to_dual(U).
Vec vector_field(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U);

/// The textbook right-hand side sum_b J_ab V_b - U_a/R_a + I_ext^a, written
/// independently of the energy route (and of J symmetry).
Vec hopfield_rhs(const NetworkSpec& spec, const SeparablePotential& sp, const Vec& U);

/// The Hopfield energy: -sum_a [ (1/2) sum_b J_ab V_a V_b
///   - (1/R_a) int_0^{V_a} Upsilon^{-1} + V_a I_ext^a ]. The integral term
/// is psi*(V_a) in closed form for Softplus/Quadratic and adaptive
/// quadrature of the inverse activation for Custom potentials.
double hopfield_energy_value(const NetworkSpec& spec, const ConvexPotential& p, const Vec& V);

struct LyapunovRate {
  double dHdt;       // chain rule: sum_a dH/dV_a * dV_a/dt
  double minus_gXX;  // -sum_a g_aa (Xdot^a)^2
};

/// The two sides of the Lyapunov identity dH/dt = -g(X,X), computed by
/// independent associations; both are < 0 wherever the field is nonzero.
LyapunovRate lyapunov_rate(const EnergyFunction& energy, const SeparablePotential& sp,
                           const Vec& U);

/// Restricted Cohen-Grossberg system
///   dU^a/dt = (B^a(U^a) - sum_j C^aj psi'(U^j)) A^a(U^a),
/// with amplification A > 0 and symmetric constant C.
struct CohenGrossbergSpec {
  int n = 0;
  std::function<double(int, double)> A;
  std::function<double(int, double)> B;
  Mat C;
  ConvexPotential psi;

  CohenGrossbergSpec(int n_in, std::function<double(int, double)> A_in,
                     std::function<double(int, double)> B_in, Mat C_in, ConvexPotential psi_in);
};

/// Direct evaluation of the right-hand side; ModelError if any A^a(U^a) <= 0.
Vec cohen_grossberg_field(const CohenGrossbergSpec& spec, const Vec& U);

/// The same field through the Lyapunov reduction Xdot^a = -A^a dH'/dV_a,
/// with dH'/dU evaluated analytically. Agrees with the direct route.
Vec cohen_grossberg_field_via_lyapunov(const CohenGrossbergSpec& spec, const Vec& U);

struct CohenGrossbergLyapunov {
  double value;  // H'(U), integral terms by adaptive quadrature from 0
  double rate;   // dH'/dt = -sum_j psi''(U^j) (1/A^j) (dU^j/dt)^2
};

CohenGrossbergLyapunov cohen_grossberg_lyapunov(const CohenGrossbergSpec& spec, const Vec& U);

}  // namespace hessfield
