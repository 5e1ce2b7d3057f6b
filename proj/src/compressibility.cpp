#include "hessfield/compressibility.hpp"

#include <algorithm>
#include <cmath>

namespace hessfield {

double kappa_closed_form(const EnergyFunction& energy, const SeparablePotential& sp,
                         const Vec& U) {
  const HessianMetricPoint m = metric_at(sp, U);
  const Vec V = sp.to_dual(U);
  const Vec gradH = energy.grad(V, &U);
  const Vec hessH = energy.hess_diag(V, &U);
  double kappa = 0.0;
  for (int a = 0; a < sp.dimension(); ++a)
    kappa -= (0.5 * m.third[a] * gradH[a] + m.g_diag[a] * m.g_diag[a] * hessH[a]) / m.g_diag[a];
  return kappa;
}

double kappa_laplacian(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U,
                       FdOptions opt) {
  const ScalarField H_of_U = [&energy, &sp](const Vec& u) { return energy.value(sp.to_dual(u)); };
  return -laplace_beltrami(sp, H_of_U, U, opt);
}

double kappa_laplacian(const ScalarField& H_of_U, const MetricField& metric, const Vec& U,
                       FdOptions opt) {
  return -laplace_beltrami(metric, H_of_U, U, opt);
}

double kappa_divergence_oracle(const VectorFn& field,
                               const std::function<double(const Vec&)>& sqrt_det, const Vec& U,
                               FdOptions opt) {
  const int n = static_cast<int>(U.size());
  const auto once = [&](double h0) {
    double acc = 0.0;
    for (int a = 0; a < n; ++a) {
      const double h = fd_step(h0, U[a]);
      Vec up = U, dn = U;
      up[a] += h;
      dn[a] -= h;
      acc += (sqrt_det(up) * field(up)[a] - sqrt_det(dn) * field(dn)[a]) / (2.0 * h);
    }
    return acc / sqrt_det(U);
  };
  const double coarse = once(opt.h0);
  const double out = opt.richardson ? (4.0 * once(0.5 * opt.h0) - coarse) / 3.0 : coarse;
  if (!std::isfinite(out)) throw NumericError("kappa_divergence_oracle: non-finite stencil value");
  return out;
}

KappaReport kappa_report(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U,
                         FdOptions opt) {
  KappaReport r;
  r.point_U = U;
  r.closed_form = kappa_closed_form(energy, sp, U);
  r.laplacian = kappa_laplacian(energy, sp, U, opt);
  const VectorFn field = [&energy, &sp](const Vec& u) { return vector_field(energy, sp, u); };
  const auto sqrt_det = [&sp](const Vec& u) { return metric_at(sp, u).sqrt_det; };
  r.divergence = kappa_divergence_oracle(field, sqrt_det, U, opt);
  r.max_pairwise_residual = std::max({std::abs(r.closed_form - r.laplacian),
                                      std::abs(r.closed_form - r.divergence),
                                      std::abs(r.laplacian - r.divergence)});
  return r;
}

FlowField model_flow(const EnergyFunction& energy, const SeparablePotential& sp) {
  FlowField f;
  f.n = sp.dimension();
  f.field = [energy, sp](const Vec& U) { return vector_field(energy, sp, U); };
  f.jacobian = [energy, sp](const Vec& U) {
    const Vec V = sp.to_dual(U);
    const Vec d2 = sp.d2_diag(U);
    Mat Jac = energy.hess(V, &U);  // becomes -H_{V_a V_b} psi''(U^b)
    for (int a = 0; a < Jac.rows(); ++a)
      for (int b = 0; b < Jac.cols(); ++b) Jac(a, b) = -Jac(a, b) * d2[b];
    return Jac;
  };
  f.sqrt_det = [sp](const Vec& U) { return metric_at(sp, U).sqrt_det; };
  f.kappa = [energy, sp](const Vec& U) { return kappa_closed_form(energy, sp, U); };
  return f;
}

FlowField linear_flow(const Vec& rates) {
  FlowField f;
  f.n = static_cast<int>(rates.size());
  f.field = [rates](const Vec& U) {
    Vec X(U.size());
    for (size_t a = 0; a < U.size(); ++a) X[a] = -rates[a] * U[a];
    return X;
  };
  f.jacobian = [rates](const Vec&) {
    Mat J(static_cast<int>(rates.size()), static_cast<int>(rates.size()), 0.0);
    for (int a = 0; a < J.rows(); ++a) J(a, a) = -rates[a];
    return J;
  };
  f.sqrt_det = [](const Vec&) { return 1.0; };
  double total = 0.0;
  for (double r : rates) total += r;
  f.kappa = [total](const Vec&) { return -total; };
  return f;
}

FlowField planar_rotation_flow() {
  FlowField f;
  f.n = 2;
  f.field = [](const Vec& U) { return Vec{U[1], -U[0]}; };
  f.jacobian = [](const Vec&) {
    Mat J(2, 2, 0.0);
    J(0, 1) = 1.0;
    J(1, 0) = -1.0;
    return J;
  };
  f.sqrt_det = [](const Vec&) { return 1.0; };
  f.kappa = [](const Vec&) { return 0.0; };
  return f;
}

namespace {

struct CoupledState {
  Vec U;
  Mat M;
};

CoupledState coupled_rk4_step(const FlowField& flow, const CoupledState& s, double h) {
  const auto deriv = [&flow](const CoupledState& y) {
    return CoupledState{flow.field(y.U), matmul(flow.jacobian(y.U), y.M)};
  };
  const auto advance = [](const CoupledState& y, const CoupledState& k, double c) {
    CoupledState out = y;
    for (size_t i = 0; i < y.U.size(); ++i) out.U[i] += c * k.U[i];
    out.M = mat_add_scaled(y.M, k.M, c);
    return out;
  };
  const CoupledState k1 = deriv(s);
  const CoupledState k2 = deriv(advance(s, k1, 0.5 * h));
  const CoupledState k3 = deriv(advance(s, k2, 0.5 * h));
  const CoupledState k4 = deriv(advance(s, k3, h));
  CoupledState out = s;
  for (size_t i = 0; i < s.U.size(); ++i)
    out.U[i] += h / 6.0 * (k1.U[i] + 2.0 * k2.U[i] + 2.0 * k3.U[i] + k4.U[i]);
  for (size_t i = 0; i < s.M.data().size(); ++i)
    out.M.data()[i] +=
        h / 6.0 * (k1.M.data()[i] + 2.0 * k2.M.data()[i] + 2.0 * k3.M.data()[i] + k4.M.data()[i]);
  return out;
}

}  // namespace

VolumeLedger volume_contraction_run(const FlowField& flow, const Vec& U0, double T, double dt) {
  VolumeLedger ledger;
  if (!(T > 0.0) || !(dt > 0.0)) throw ConfigError("volume_contraction_run: T and dt must be positive");
  const int N = std::max(1, static_cast<int>(std::ceil(T / dt - 1e-12)));
  const double h = T / N;  // uniform steps keep the Simpson nodes aligned
  ledger.T = T;
  ledger.dt = h;
  ledger.steps = N;

  CoupledState s{U0, Mat::identity(flow.n)};
  std::vector<double> kappas;
  kappas.reserve(N + 1);
  ledger.rows.reserve(N + 1);

  double sqrt_det0 = 0.0;
  try {
    sqrt_det0 = flow.sqrt_det(U0);
    kappas.push_back(flow.kappa(U0));
    ledger.rows.push_back({0.0, 0.0, kappas.back()});

    for (int step = 0; step < N; ++step) {
      s = coupled_rk4_step(flow, s, h);
      if (!all_finite(s.U) || !all_finite(s.M.data()))
        throw NumericError("non-finite state or Jacobian at step " + std::to_string(step + 1));
      const double t = (step + 1) * h;
      const double detM = lu_det(s.M);
      if (!(detM > 0.0))
        throw NumericError("Jacobian determinant " + std::to_string(detM) +
                           " not positive at t = " + std::to_string(t));
      kappas.push_back(flow.kappa(s.U));
      ledger.rows.push_back({t, std::log(detM), kappas.back()});
    }

    ledger.log_volume_ratio =
        ledger.rows.back().log_det_M + std::log(flow.sqrt_det(s.U)) - std::log(sqrt_det0);
    ledger.kappa_integral = simpson_uniform(kappas, h);
    ledger.abs_discrepancy = std::abs(ledger.log_volume_ratio - ledger.kappa_integral);
    ledger.rel_discrepancy =
        ledger.abs_discrepancy /
        std::max({std::abs(ledger.log_volume_ratio), std::abs(ledger.kappa_integral), 1e-6});
  } catch (const Error& err) {
    ledger.status = VolumeLedger::Status::Failed;
    ledger.failure_detail = err.what();
  }
  return ledger;
}

VolumeLedger volume_contraction_run(const EnergyFunction& energy, const SeparablePotential& sp,
                                    const Vec& U0, double T, double dt) {
  return volume_contraction_run(model_flow(energy, sp), U0, T, dt);
}

}  // namespace hessfield
