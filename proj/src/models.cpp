#include "hessfield/models.hpp"

#include <algorithm>
#include <cmath>

namespace hessfield {

NetworkSpec::NetworkSpec(Mat J_in, Vec R_in, Vec I_ext_in)
    : n(J_in.rows()), J(std::move(J_in)), R(std::move(R_in)), I_ext(std::move(I_ext_in)) {
  if (!J.is_square() || n == 0) throw ModelError("NetworkSpec: J must be square and non-empty");
  if (static_cast<int>(R.size()) != n || static_cast<int>(I_ext.size()) != n)
    throw ModelError("NetworkSpec: R and I_ext must have length n = " + std::to_string(n));
  const double asym = J.max_asymmetry();
  if (asym > 1e-12)
    throw ModelError("NetworkSpec: J is not symmetric, max |J_ab - J_ba| = " +
                     std::to_string(asym));
  for (int a = 0; a < n; ++a)
    if (!(R[a] > 0.0) || !std::isfinite(R[a]))
      throw ModelError("NetworkSpec: R[" + std::to_string(a) + "] = " + std::to_string(R[a]) +
                       " must be positive");
}

EnergyFunction EnergyFunction::quadratic_identity(int n) {
  EnergyFunction e;
  e.kind_ = EnergyKind::QuadraticIdentity;
  e.n_ = n;
  return e;
}

EnergyFunction EnergyFunction::hopfield(NetworkSpec spec, ConvexPotential p) {
  EnergyFunction e;
  e.kind_ = EnergyKind::Hopfield;
  e.n_ = spec.n;
  e.network_ = std::move(spec);
  e.potential_ = std::move(p);
  return e;
}

EnergyFunction EnergyFunction::custom(CustomVSpec spec) {
  if (!spec.value || !spec.grad) throw ModelError("custom energy: value and grad are required");
  EnergyFunction e;
  e.kind_ = EnergyKind::CustomV;
  e.n_ = spec.n;
  e.hooks_ = std::move(spec);
  return e;
}

void EnergyFunction::require_dimension(const Vec& V) const {
  if (static_cast<int>(V.size()) != n_)
    throw ModelError("energy: expected dimension " + std::to_string(n_) + ", got " +
                     std::to_string(V.size()));
}

double EnergyFunction::value(const Vec& V) const {
  require_dimension(V);
  switch (kind_) {
    case EnergyKind::QuadraticIdentity: {
      double s = 0.0;
      for (double v : V) s += v * v;
      return 0.5 * s;
    }
    case EnergyKind::Hopfield:
      return hopfield_energy_value(*network_, *potential_, V);
    case EnergyKind::CustomV:
      return hooks_.value(V);
  }
  return 0.0;
}

Vec EnergyFunction::grad(const Vec& V, const Vec* U_hint) const {
  require_dimension(V);
  switch (kind_) {
    case EnergyKind::QuadraticIdentity:
      return V;
    case EnergyKind::Hopfield: {
      const NetworkSpec& net = *network_;
      Vec g(n_);
      const Vec JV = matvec(net.J, V);
      for (int a = 0; a < n_; ++a) {
        const double Ua = U_hint ? (*U_hint)[a] : potential_->dual_inverse(V[a]);
        g[a] = -(JV[a] - Ua / net.R[a] + net.I_ext[a]);
      }
      return g;
    }
    case EnergyKind::CustomV:
      return hooks_.grad(V);
  }
  return {};
}

Vec EnergyFunction::hess_diag(const Vec& V, const Vec* U_hint) const {
  require_dimension(V);
  switch (kind_) {
    case EnergyKind::QuadraticIdentity:
      return Vec(n_, 1.0);
    case EnergyKind::Hopfield: {
      const NetworkSpec& net = *network_;
      Vec h(n_);
      for (int a = 0; a < n_; ++a) {
        const double d2 = (U_hint && potential_->kind() == PotentialKind::Custom)
                              ? potential_->d2((*U_hint)[a])
                              : potential_->d2_from_dual(V[a]);
        h[a] = -net.J(a, a) + 1.0 / (net.R[a] * d2);
      }
      return h;
    }
    case EnergyKind::CustomV: {
      const Mat H = hess(V, U_hint);
      Vec h(n_);
      for (int a = 0; a < n_; ++a) h[a] = H(a, a);
      return h;
    }
  }
  return {};
}

Mat EnergyFunction::hess(const Vec& V, const Vec* U_hint) const {
  require_dimension(V);
  switch (kind_) {
    case EnergyKind::QuadraticIdentity:
      return Mat::identity(n_);
    case EnergyKind::Hopfield: {
      Mat H = network_->J;
      for (auto& x : H.data()) x = -x;
      const Vec d = hess_diag(V, U_hint);
      for (int a = 0; a < n_; ++a) H(a, a) = d[a];
      return H;
    }
    case EnergyKind::CustomV: {
      if (hooks_.hess) return hooks_.hess(V);
      // central differences of the supplied gradient
      Mat H(n_, n_, 0.0);
      for (int b = 0; b < n_; ++b) {
        const double h = fd_step(1e-6, V[b]);
        Vec up = V, dn = V;
        up[b] += h;
        dn[b] -= h;
        const Vec gp = hooks_.grad(up), gn = hooks_.grad(dn);
        for (int a = 0; a < n_; ++a) H(a, b) = (gp[a] - gn[a]) / (2.0 * h);
      }
      // symmetrize the finite-difference estimate
      for (int a = 0; a < n_; ++a)
        for (int b = a + 1; b < n_; ++b) {
          const double s = 0.5 * (H(a, b) + H(b, a));
          H(a, b) = s;
          H(b, a) = s;
        }
      return H;
    }
  }
  return {};
}

Vec vector_field(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U) {
  const Vec V = sp.to_dual(U);
  Vec g = energy.grad(V, &U);
  for (double& x : g) x = -x;
  return g;
}

Vec hopfield_rhs(const NetworkSpec& spec, const SeparablePotential& sp, const Vec& U) {
  const Vec V = sp.to_dual(U);
  Vec X = matvec(spec.J, V);
  for (int a = 0; a < spec.n; ++a) X[a] += -U[a] / spec.R[a] + spec.I_ext[a];
  return X;
}

double hopfield_energy_value(const NetworkSpec& spec, const ConvexPotential& p, const Vec& V) {
  if (static_cast<int>(V.size()) != spec.n)
    throw ModelError("hopfield_energy_value: V has wrong dimension");
  double H = 0.0;
  const Vec JV = matvec(spec.J, V);
  for (int a = 0; a < spec.n; ++a) {
    double integral;  // int_0^{V_a} Upsilon^{-1}
    if (p.kind() == PotentialKind::Custom) {
      integral = integrate_adaptive_open([&p](double v) { return p.dual_inverse(v); }, 0.0, V[a]);
    } else {
      // Upsilon^{-1} is the derivative of psi*, and psi* vanishes at 0 for
      // both closed-form kinds, so the integral is psi*(V_a) itself.
      integral = p.dual_eval(V[a]);
    }
    H -= 0.5 * V[a] * JV[a] - integral / spec.R[a] + V[a] * spec.I_ext[a];
  }
  return H;
}

LyapunovRate lyapunov_rate(const EnergyFunction& energy, const SeparablePotential& sp,
                           const Vec& U) {
  const Vec V = sp.to_dual(U);
  const Vec gradH = energy.grad(V, &U);
  const Vec g = sp.d2_diag(U);
  double dHdt = 0.0, minus_gXX = 0.0;
  for (size_t a = 0; a < gradH.size(); ++a) {
    const double xdot = -gradH[a];
    dHdt += gradH[a] * (g[a] * xdot);  // dV_a/dt = psi'' * Xdot^a
    minus_gXX -= g[a] * xdot * xdot;
  }
  return {dHdt, minus_gXX};
}

CohenGrossbergSpec::CohenGrossbergSpec(int n_in, std::function<double(int, double)> A_in,
                                       std::function<double(int, double)> B_in, Mat C_in,
                                       ConvexPotential psi_in)
    : n(n_in), A(std::move(A_in)), B(std::move(B_in)), C(std::move(C_in)), psi(std::move(psi_in)) {
  if (n <= 0 || !A || !B) throw ModelError("CohenGrossbergSpec: n, A, B are required");
  if (!C.is_square() || C.rows() != n) throw ModelError("CohenGrossbergSpec: C must be n x n");
  const double asym = C.max_asymmetry();
  if (asym > 1e-12)
    throw ModelError("CohenGrossbergSpec: C is not symmetric, max |C_ab - C_ba| = " +
                     std::to_string(asym));
}

namespace {

double cg_amplification(const CohenGrossbergSpec& spec, int a, double u) {
  const double amp = spec.A(a, u);
  if (!(amp > 0.0) || !std::isfinite(amp))
    throw ModelError("cohen_grossberg: A^" + std::to_string(a) + "(" + std::to_string(u) +
                     ") = " + std::to_string(amp) + " is not positive");
  return amp;
}

}  // namespace

Vec cohen_grossberg_field(const CohenGrossbergSpec& spec, const Vec& U) {
  Vec dpsi(spec.n);
  for (int j = 0; j < spec.n; ++j) dpsi[j] = spec.psi.d1(U[j]);
  const Vec Cd = matvec(spec.C, dpsi);
  Vec X(spec.n);
  for (int a = 0; a < spec.n; ++a)
    X[a] = (spec.B(a, U[a]) - Cd[a]) * cg_amplification(spec, a, U[a]);
  return X;
}

Vec cohen_grossberg_field_via_lyapunov(const CohenGrossbergSpec& spec, const Vec& U) {
  Vec dpsi(spec.n);
  for (int j = 0; j < spec.n; ++j) dpsi[j] = spec.psi.d1(U[j]);
  const Vec Cd = matvec(spec.C, dpsi);
  Vec X(spec.n);
  for (int a = 0; a < spec.n; ++a) {
    const double d2 = spec.psi.d2(U[a]);
    // dH'/dU^a = (-B^a + sum_k C^ak psi'(U^k)) psi''(U^a); lift the index
    // with the metric and scale by the amplification.
    const double dHprime_dUa = (-spec.B(a, U[a]) + Cd[a]) * d2;
    X[a] = -cg_amplification(spec, a, U[a]) * dHprime_dUa / d2;
  }
  return X;
}

CohenGrossbergLyapunov cohen_grossberg_lyapunov(const CohenGrossbergSpec& spec, const Vec& U) {
  Vec dpsi(spec.n);
  for (int j = 0; j < spec.n; ++j) dpsi[j] = spec.psi.d1(U[j]);

  double value = 0.0;
  for (int j = 0; j < spec.n; ++j) {
    const auto integrand = [&spec, j](double xi) { return spec.B(j, xi) * spec.psi.d2(xi); };
    value -= integrate_adaptive(integrand, 0.0, U[j], 1e-12);
  }
  const Vec Cd = matvec(spec.C, dpsi);
  for (int j = 0; j < spec.n; ++j) value += 0.5 * dpsi[j] * Cd[j];

  const Vec X = cohen_grossberg_field(spec, U);
  double rate = 0.0;
  for (int j = 0; j < spec.n; ++j)
    rate -= spec.psi.d2(U[j]) / cg_amplification(spec, j, U[j]) * X[j] * X[j];

  return {value, rate};
}

}  // namespace hessfield
