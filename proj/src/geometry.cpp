#include "hessfield/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hessfield {

HessianMetricPoint metric_at(const SeparablePotential& sp, const Vec& U) {
  const int n = sp.dimension();
  HessianMetricPoint m;
  m.point_U = U;
  m.g_diag = sp.d2_diag(U);
  m.third = sp.d3_diag(U);
  m.g_inv.resize(n);
  double det = 1.0;
  for (int a = 0; a < n; ++a) {
    const double g = m.g_diag[a];
    if (!(g > 0.0) || !std::isfinite(g))
      throw GeometryError("metric_at: psi''(U^" + std::to_string(a) + ") = " + std::to_string(g) +
                          " is not positive (potential not strictly convex at point)");
    m.g_inv[a] = 1.0 / g;
    det *= g;
  }
  m.sqrt_det = std::sqrt(det);
  return m;
}

MetricField metric_field_of(const SeparablePotential& sp) {
  return [sp](const Vec& U) {
    const HessianMetricPoint p = metric_at(sp, U);
    const int n = sp.dimension();
    MetricData d;
    d.g = Mat(n, n, 0.0);
    d.g_inv = Mat(n, n, 0.0);
    for (int a = 0; a < n; ++a) {
      d.g(a, a) = p.g_diag[a];
      d.g_inv(a, a) = p.g_inv[a];
    }
    d.sqrt_det = p.sqrt_det;
    return d;
  };
}

MetricField metric_field_from_hessian(ScalarField Psi, double h0) {
  return [Psi = std::move(Psi), h0](const Vec& U) {
    const int n = static_cast<int>(U.size());
    MetricData d;
    d.g = Mat(n, n, 0.0);
    for (int a = 0; a < n; ++a) {
      d.g(a, a) = partial2(Psi, U, a, fd_step(h0, U[a]));
      for (int b = a + 1; b < n; ++b) {
        const double m = partial_mixed(Psi, U, a, b, fd_step(h0, U[a]), fd_step(h0, U[b]));
        d.g(a, b) = m;
        d.g(b, a) = m;
      }
    }
    const Mat L = cholesky(d.g);  // GeometryError if not positive definite
    double sd = 1.0;
    for (int a = 0; a < n; ++a) sd *= L(a, a);
    d.sqrt_det = sd;
    d.g_inv = gauss_inverse(d.g);
    return d;
  };
}

double dual_metric_check(const SeparablePotential& sp, const Vec& U, double h0) {
  const int n = sp.dimension();
  const HessianMetricPoint m = metric_at(sp, U);
  const Vec V = sp.to_dual(U);
  const auto dual = [&sp](const Vec& v) { return sp.dual_value(v); };

  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    const double ha = fd_step(h0, V[a]);
    for (int b = a; b < n; ++b) {
      const double fd = (a == b) ? partial2(dual, V, a, ha)
                                 : partial_mixed(dual, V, a, b, ha, fd_step(h0, V[b]));
      const double exact = (a == b) ? m.g_inv[a] : 0.0;
      worst = std::max(worst, std::abs(exact - fd));
    }
  }
  return worst;
}

namespace {

double laplace_separable_once(const SeparablePotential& sp, const ScalarField& f, const Vec& U,
                              double h0) {
  const HessianMetricPoint m = metric_at(sp, U);
  const int n = sp.dimension();
  // Divergence form with the diagonal metric folded in analytically:
  // sum_a [ -psi'''/(2 psi''^2) d_a f + (1/psi'') d2_a f ].
  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    const double h = fd_step(h0, U[a]);
    const double d1f = partial1(f, U, a, h);
    const double d2f = partial2(f, U, a, h);
    acc += -0.5 * m.third[a] / (m.g_diag[a] * m.g_diag[a]) * d1f + m.g_inv[a] * d2f;
  }
  return acc;
}

double laplace_general_once(const MetricField& metric, const ScalarField& f, const Vec& U,
                            double h0) {
  const int n = static_cast<int>(U.size());
  const MetricData md = metric(U);

  // sum_ab [ d_a(sqrt|g| g^ab)/sqrt|g| * d_b f + g^ab d2_ab f ], the metric
  // derivative taken on the field itself so f only ever sees plain stencils.
  Vec grad_f(n);
  for (int b = 0; b < n; ++b) grad_f[b] = partial1(f, U, b, fd_step(h0, U[b]));

  double acc = 0.0;
  for (int a = 0; a < n; ++a) {
    const double ha = fd_step(h0, U[a]);
    Vec up = U, dn = U;
    up[a] += ha;
    dn[a] -= ha;
    const MetricData mp = metric(up);
    const MetricData mn = metric(dn);
    for (int b = 0; b < n; ++b) {
      const double dw = (mp.sqrt_det * mp.g_inv(a, b) - mn.sqrt_det * mn.g_inv(a, b)) / (2.0 * ha);
      acc += dw / md.sqrt_det * grad_f[b];
      const double d2f = (a == b) ? partial2(f, U, a, ha)
                                  : partial_mixed(f, U, a, b, ha, fd_step(h0, U[b]));
      acc += md.g_inv(a, b) * d2f;
    }
  }
  return acc;
}

double with_richardson(const std::function<double(double)>& eval, double h0, bool richardson) {
  const double coarse = eval(h0);
  if (!richardson) return coarse;
  const double fine = eval(0.5 * h0);
  return (4.0 * fine - coarse) / 3.0;  // central stencils are O(h^2)
}

}  // namespace

double laplace_beltrami(const SeparablePotential& sp, const ScalarField& f, const Vec& U,
                        FdOptions opt) {
  const double out = with_richardson(
      [&](double h) { return laplace_separable_once(sp, f, U, h); }, opt.h0, opt.richardson);
  if (!std::isfinite(out)) throw NumericError("laplace_beltrami: non-finite stencil value");
  return out;
}

double laplace_beltrami(const MetricField& metric, const ScalarField& f, const Vec& U,
                        FdOptions opt) {
  const double out = with_richardson(
      [&](double h) { return laplace_general_once(metric, f, U, h); }, opt.h0, opt.richardson);
  if (!std::isfinite(out)) throw NumericError("laplace_beltrami: non-finite stencil value");
  return out;
}

OneFormField lower_with_metric(const SeparablePotential& sp, const VectorFn& field) {
  return [sp, field](const Vec& U) {
    Vec omega = field(U);
    const Vec g = sp.d2_diag(U);
    for (size_t b = 0; b < omega.size(); ++b) omega[b] *= g[b];
    return omega;
  };
}

double one_form_closedness(const OneFormField& omega, const Vec& U, double h0) {
  const int n = static_cast<int>(U.size());
  // d_a omega evaluated for all axes first; each evaluation yields the full
  // component vector, so both orderings of every (a,b) pair come for free.
  std::vector<Vec> jac(n);  // jac[a][b] = d_a omega_b
  for (int a = 0; a < n; ++a) {
    const double h = fd_step(h0, U[a]);
    Vec up = U, dn = U;
    up[a] += h;
    dn[a] -= h;
    const Vec wp = omega(up), wn = omega(dn);
    jac[a].resize(n);
    for (int b = 0; b < n; ++b) jac[a][b] = (wp[b] - wn[b]) / (2.0 * h);
  }
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) worst = std::max(worst, std::abs(jac[a][b] - jac[b][a]));
  return worst;
}

double coderivative_of(const OneFormField& omega, const SeparablePotential& sp, const Vec& U,
                       FdOptions opt) {
  const auto once = [&](double h0) {
    const HessianMetricPoint at = metric_at(sp, U);
    const int n = sp.dimension();
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      const double h = fd_step(h0, U[a]);
      Vec up = U, dn = U;
      up[a] += h;
      dn[a] -= h;
      const HessianMetricPoint mp = metric_at(sp, up);
      const HessianMetricPoint mn = metric_at(sp, dn);
      const double rp = mp.sqrt_det * mp.g_inv[a] * omega(up)[a];
      const double rn = mn.sqrt_det * mn.g_inv[a] * omega(dn)[a];
      acc += (rp - rn) / (2.0 * h);
    }
    return acc / at.sqrt_det;
  };
  const double out = with_richardson(once, opt.h0, opt.richardson);
  if (!std::isfinite(out)) throw NumericError("coderivative_of: non-finite stencil value");
  return out;
}

double coderivative_of(const OneFormField& omega, const MetricField& metric, const Vec& U,
                       FdOptions opt) {
  const auto once = [&](double h0) {
    const int n = static_cast<int>(U.size());
    const MetricData at = metric(U);
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      const double h = fd_step(h0, U[a]);
      Vec up = U, dn = U;
      up[a] += h;
      dn[a] -= h;
      const MetricData mp = metric(up);
      const MetricData mn = metric(dn);
      const Vec wp = omega(up), wn = omega(dn);
      double rp = 0.0, rn = 0.0;
      for (int b = 0; b < n; ++b) {
        rp += mp.sqrt_det * mp.g_inv(a, b) * wp[b];
        rn += mn.sqrt_det * mn.g_inv(a, b) * wn[b];
      }
      acc += (rp - rn) / (2.0 * h);
    }
    return acc / at.sqrt_det;
  };
  const double out = with_richardson(once, opt.h0, opt.richardson);
  if (!std::isfinite(out)) throw NumericError("coderivative_of: non-finite stencil value");
  return out;
}

}  // namespace hessfield
