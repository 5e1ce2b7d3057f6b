#include "hessfield/verify.hpp"

#include <algorithm>
#include <cmath>

#include "hessfield/batch.hpp"
#include "hessfield/compressibility.hpp"
#include "hessfield/dynamics.hpp"
#include "hessfield/geometry.hpp"
#include "hessfield/models.hpp"
#include "hessfield/potentials.hpp"

namespace hessfield {

bool SuiteResult::all_pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

void add(SuiteResult& suite, const std::string& name, double measured, double tolerance,
         bool expects_exceed = false) {
  CheckResult c;
  c.name = name;
  c.measured = measured;
  c.tolerance = tolerance;
  c.expects_exceed = expects_exceed;
  c.pass = expects_exceed ? measured > tolerance : measured <= tolerance;
  suite.checks.push_back(std::move(c));
}

Mat random_symmetric(Rng& rng, int n, double lo, double hi, bool zero_diag) {
  Mat J(n, n, 0.0);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const double x = (a == b && zero_diag) ? 0.0 : rng.uniform(lo, hi);
      J(a, b) = x;
      J(b, a) = x;
    }
  return J;
}

NetworkSpec random_network(Rng& rng, int n, bool zero_diag = false) {
  Mat J = random_symmetric(rng, n, -0.5, 0.5, zero_diag);
  Vec R(n), I(n);
  for (int a = 0; a < n; ++a) {
    R[a] = rng.uniform(0.5, 2.0);
    I[a] = rng.uniform(-0.5, 0.5);
  }
  return NetworkSpec(std::move(J), std::move(R), std::move(I));
}

// The closed-form compressibility displays for the softplus chain, written
// directly from the exponentials rather than through the derivative chain,
// as independent arithmetic cross-checks.
double display_kappa_gradient_system(const Vec& U) {
  double k = 0.0;
  for (double u : U) {
    const double e = std::exp(u);
    k -= (1.5 - 0.5 * e) * e / ((1.0 + e) * (1.0 + e));
  }
  return k;
}

double display_kappa_hopfield(const NetworkSpec& net, const Vec& U) {
  const int n = net.n;
  Vec V(n);
  for (int a = 0; a < n; ++a) {
    const double e = std::exp(U[a]);
    V[a] = e / (1.0 + e);
  }
  const Vec JV = matvec(net.J, V);
  double k = 0.0;
  for (int a = 0; a < n; ++a) {
    const double e = std::exp(U[a]);
    const double onePe = 1.0 + e;
    const double curly = -JV[a] + U[a] / net.R[a] - net.I_ext[a];
    k -= (1.0 - e) / (2.0 * onePe) * curly - e / (onePe * onePe) * net.J(a, a) + 1.0 / net.R[a];
  }
  return k;
}

struct SteadyPoint {
  Vec U;
  bool reached;
};

SteadyPoint find_steady(const EnergyFunction& energy, const SeparablePotential& sp, const Vec& U0,
                        double t_max = 400.0) {
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = t_max;
  cfg.steady_tol = 1e-10;
  cfg.record_every = 1 << 30;
  const TrajectoryRecord rec = integrate(energy, sp, U0, cfg);
  return {rec.rows.empty() ? U0 : rec.rows.back().U,
          rec.termination_reason == TerminationReason::SteadyState};
}

}  // namespace

SuiteResult verify_legendre(std::uint64_t seed) {
  SuiteResult suite{"legendre", {}};
  Rng rng(seed);
  const ConvexPotential softplus = ConvexPotential::softplus();

  {
    const SoftplusChain c = softplus_chain(0.0);
    const double dev = std::max({std::abs(c.value - std::log(2.0)), std::abs(c.d1 - 0.5),
                                 std::abs(c.d2 - 0.25), std::abs(c.d3)});
    add(suite, "softplus chain at 0 equals (ln 2, 1/2, 1/4, 0)", dev, 1e-15);
  }
  {
    double worst_rel = 0.0;
    int nonconvex = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = rng.uniform(-30.0, 30.0);
      const SoftplusChain c = softplus_chain(x);
      if (!(c.d2 > 0.0)) ++nonconvex;
      const double h = fd_step(1e-6, x);
      const double fd = central1([](double y) { return sigmoid(y); }, x, h);
      // scale floor: the stencil is rounding-bound where the sigmoid
      // saturates, so normalize by max(1, psi'')
      worst_rel = std::max(worst_rel, std::abs(fd - c.d2) / std::max(1.0, c.d2));
    }
    add(suite, "psi'' positivity violations on [-30,30]", nonconvex, 0.0);
    add(suite, "finite-diff(psi') vs psi'', normalized", worst_rel, 1e-5);
  }
  {
    const ConvexPotential quad = ConvexPotential::quadratic(1.7);
    ConvexPotential::CustomSpec quartic;
    quartic.eval = [](double x) { return 0.25 * x * x * x * x + 0.5 * x * x; };
    quartic.d1 = [](double x) { return x * x * x + x; };
    quartic.d2 = [](double x) { return 3.0 * x * x + 1.0; };
    const ConvexPotential quart = ConvexPotential::custom(std::move(quartic));
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
      const double x = rng.uniform(-10.0, 10.0);
      for (const ConvexPotential* p : {&softplus, &quad, &quart}) {
        const double xs = p->d1(x);
        const LegendrePoint lp = legendre_dual(*p, xs);
        worst = std::max(worst, std::abs(p->eval(x) + lp.psi_star - x * xs));
      }
    }
    add(suite, "Legendre involution psi + psi*(psi') - x psi'", worst, 1e-10);
  }
  {
    const SeparablePotential sp(softplus, 3);
    double worst = 0.0;
    int mono_violations = 0;
    for (int i = 0; i < 200; ++i) {
      const Vec V = rng.uniform_vec(3, 0.005, 0.995);
      const Vec back = sp.to_dual(sp.from_dual(V));
      for (int a = 0; a < 3; ++a) worst = std::max(worst, std::abs(back[a] - V[a]));
      const double x = rng.uniform(-20.0, 20.0), y = rng.uniform(-20.0, 20.0);
      if (x < y && !(softplus.d1(x) < softplus.d1(y))) ++mono_violations;
      if (y < x && !(softplus.d1(y) < softplus.d1(x))) ++mono_violations;
    }
    add(suite, "to_dual(from_dual(V)) round trip", worst, 1e-12);
    add(suite, "dual-map monotonicity violations", mono_violations, 0.0);
  }
  {
    double worst = 0.0;
    for (const double V : {0.05, 0.2, 0.5, 0.77, 0.95}) {
      const double q =
          integrate_adaptive_open([](double v) { return logit(v); }, 0.0, V, 1e-11);
      worst = std::max(worst, std::abs(q - softplus.dual_eval(V)));
    }
    add(suite, "int_0^V logit = psi*(V) against adaptive quadrature", worst, 1e-8);
  }
  return suite;
}

SuiteResult verify_geometry(std::uint64_t seed) {
  SuiteResult suite{"geometry", {}};
  Rng rng(seed);
  const ConvexPotential softplus = ConvexPotential::softplus();

  {
    double worst = 0.0;
    for (const int n : {1, 2, 4}) {
      const SeparablePotential sp(softplus, n);
      for (int i = 0; i < 100; ++i)
        worst = std::max(worst, dual_metric_check(sp, rng.uniform_vec(n, -3.0, 3.0)));
    }
    add(suite, "dual metric residual g^ab vs FD Hessian of Psi*", worst, 1e-5);
  }
  {
    const SeparablePotential sp(softplus, 4);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const HessianMetricPoint m = metric_at(sp, rng.uniform_vec(4, -5.0, 5.0));
      for (int a = 0; a < 4; ++a) worst = std::max(worst, std::abs(m.g_diag[a] * m.g_inv[a] - 1.0));
    }
    add(suite, "pairing duality g_aa * g^aa = 1", worst, 1e-12);
  }
  {
    const SeparablePotential sp(softplus, 3);
    const ScalarField f = [](const Vec& u) { return u[0] * u[0] + 0.5 * u[1] * u[2]; };
    const ScalarField g = [](const Vec& u) { return std::sin(u[0]) + u[1] * u[2] * u[2]; };
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const Vec U = rng.uniform_vec(3, -2.0, 2.0);
      const double alpha = rng.uniform(-2.0, 2.0), beta = rng.uniform(-2.0, 2.0);
      const ScalarField combo = [&](const Vec& u) { return alpha * f(u) + beta * g(u); };
      const double lhs = laplace_beltrami(sp, combo, U);
      const double rhs = alpha * laplace_beltrami(sp, f, U) + beta * laplace_beltrami(sp, g, U);
      worst = std::max(worst, std::abs(lhs - rhs));
    }
    add(suite, "Laplacian linearity", worst, 5e-6);
  }
  {
    // general dense-metric path against the diagonal fast path
    const SeparablePotential sp(softplus, 3);
    const MetricField dense = metric_field_of(sp);
    const ScalarField f = [](const Vec& u) {
      return 0.5 * u[0] * u[0] + std::cos(u[1]) + u[2] * u[1];
    };
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
      const Vec U = rng.uniform_vec(3, -2.0, 2.0);
      worst = std::max(worst, std::abs(laplace_beltrami(sp, f, U) - laplace_beltrami(dense, f, U)));
    }
    add(suite, "general Laplacian path vs separable fast path", worst, 1e-4);
  }
  {
    const SeparablePotential sp(softplus, 3);
    Rng jrng(seed ^ 0x9e3779b97f4a7c15ull);
    const NetworkSpec net = random_network(jrng, 3);
    const EnergyFunction energy = EnergyFunction::hopfield(net, softplus);
    const VectorFn field = [&](const Vec& u) { return vector_field(energy, sp, u); };
    const OneFormField omega = lower_with_metric(sp, field);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec U = rng.uniform_vec(3, -2.0, 2.0);
      const double scale = std::max(1.0, norm_inf(omega(U)));
      worst = std::max(worst, one_form_closedness(omega, U) / scale);
    }
    add(suite, "closedness of lowered field, symmetric J", worst, 1e-5);

    // negative control: same field with J asymmetric must not be closed
    Mat Jbad = net.J;
    Jbad(0, 1) += 0.6;  // break symmetry only
    const Vec R = net.R, I = net.I_ext;
    const VectorFn bad_field = [&sp, Jbad, R, I](const Vec& u) {
      const Vec V = sp.to_dual(u);
      Vec X = matvec(Jbad, V);
      for (size_t a = 0; a < X.size(); ++a) X[a] += -u[a] / R[a] + I[a];
      return X;
    };
    const OneFormField bad_omega = lower_with_metric(sp, bad_field);
    const Vec U = rng.uniform_vec(3, -2.0, 2.0);
    const double scale = std::max(1.0, norm_inf(bad_omega(U)));
    add(suite, "closedness negative control, asymmetric J (expects exceedance)",
        one_form_closedness(bad_omega, U) / scale, 1e-5, /*expects_exceed=*/true);
  }
  {
    // co-derivative of the lowered field against the compressibility
    const SeparablePotential sp1(softplus, 1);
    const EnergyFunction grad1 = EnergyFunction::quadratic_identity(1);
    const OneFormField omega1 =
        lower_with_metric(sp1, [&](const Vec& u) { return vector_field(grad1, sp1, u); });
    add(suite, "coderivative at origin equals kappa = -1/4",
        std::abs(coderivative_of(omega1, sp1, Vec{0.0}) + 0.25), 1e-6);

    const OneFormField zero = [](const Vec& u) { return Vec(u.size(), 0.0); };
    add(suite, "coderivative of the zero one-form",
        std::abs(coderivative_of(zero, sp1, Vec{0.3})), 1e-12);

    const SeparablePotential sp(softplus, 2);
    Rng jrng(seed ^ 0xa5a5a5a5ull);
    const NetworkSpec net = random_network(jrng, 2);
    const EnergyFunction energy = EnergyFunction::hopfield(net, softplus);
    const OneFormField omega =
        lower_with_metric(sp, [&](const Vec& u) { return vector_field(energy, sp, u); });
    double worst = 0.0, worst_grad = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec U = rng.uniform_vec(2, -2.0, 2.0);
      const double kappa = kappa_closed_form(energy, sp, U);
      worst = std::max(worst, std::abs(coderivative_of(omega, sp, U) - kappa));
      for (int c = 0; c < 2 && i < 10; ++c) {
        const double h = 1e-3;
        const ScalarField cod = [&](const Vec& u) { return coderivative_of(omega, sp, u); };
        const ScalarField kap = [&](const Vec& u) { return kappa_closed_form(energy, sp, u); };
        worst_grad =
            std::max(worst_grad, std::abs(partial1(cod, U, c, h) - partial1(kap, U, c, h)));
      }
    }
    add(suite, "coderivative of lowered field equals kappa", worst, 1e-4);
    add(suite, "gradient of coderivative equals gradient of kappa", worst_grad, 1e-4);
  }
  return suite;
}

SuiteResult verify_lyapunov(std::uint64_t seed) {
  SuiteResult suite{"lyapunov", {}};
  Rng rng(seed);
  const ConvexPotential softplus = ConvexPotential::softplus();

  {
    double worst_rel = 0.0, worst_pairing = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const int n = 1 + static_cast<int>(rng.uniform(0.0, 3.0));
      const SeparablePotential sp(softplus, n);
      const EnergyFunction energy = (i % 2 == 0)
                                        ? EnergyFunction::quadratic_identity(n)
                                        : EnergyFunction::hopfield(random_network(rng, n), softplus);
      const Vec U = rng.uniform_vec(n, -3.0, 3.0);
      const LyapunovRate r = lyapunov_rate(energy, sp, U);
      const double denom = std::max({std::abs(r.dHdt), std::abs(r.minus_gXX), 1e-300});
      worst_rel = std::max(worst_rel, std::abs(r.dHdt - r.minus_gXX) / denom);

      // metric pairing: g_aa Xdot^a + dH/dU^a = 0 with the chain rule
      const Vec V = sp.to_dual(U);
      const Vec gradH = energy.grad(V, &U);
      const Vec g = sp.d2_diag(U);
      const Vec X = vector_field(energy, sp, U);
      for (int a = 0; a < n; ++a)
        worst_pairing = std::max(worst_pairing, std::abs(g[a] * X[a] + g[a] * gradH[a]));
    }
    add(suite, "dH/dt equals -g(X,X), relative", worst_rel, 1e-10);
    add(suite, "metric pairing g(X,-) = -dH", worst_pairing, 1e-10);
  }
  {
    double worst_audit = -1e300, worst_point = 0.0;
    for (int traj = 0; traj < 20; ++traj) {
      const SeparablePotential sp(softplus, 2);
      const EnergyFunction energy = EnergyFunction::hopfield(random_network(rng, 2), softplus);
      IntegratorConfig cfg;
      cfg.dt = 1e-3;
      cfg.t_max = 5.0;
      cfg.record_every = 50;
      const TrajectoryRecord rec = integrate(energy, sp, rng.uniform_vec(2, -2.0, 2.0), cfg);
      worst_audit = std::max(worst_audit, lyapunov_audit(rec));
      for (const TrajectoryRow& row : rec.rows) {
        const LyapunovRate r = lyapunov_rate(energy, sp, row.U);
        const double denom = std::max({std::abs(r.dHdt), std::abs(r.minus_gXX), 1e-300});
        worst_point = std::max(worst_point, std::abs(r.dHdt - r.minus_gXX) / denom);
      }
    }
    add(suite, "trajectory Lyapunov audit (20 seeded runs)", worst_audit, 1e-9);
    add(suite, "recorded rows: dH/dt vs -g(X,X), relative", worst_point, 1e-8);
  }
  {
    // order check: halving dt cuts the terminal error by about 2^4
    const SeparablePotential sp(softplus, 2);
    Mat J(2, 2, 0.0);
    J(0, 1) = J(1, 0) = 0.5;
    const EnergyFunction energy =
        EnergyFunction::hopfield(NetworkSpec(J, {1.0, 1.5}, {0.2, -0.1}), softplus);
    const Vec U0{1.5, -1.0};
    const auto terminal = [&](double dt) {
      IntegratorConfig cfg;
      cfg.dt = dt;
      cfg.t_max = 2.0;
      cfg.record_every = 1 << 30;
      return integrate(energy, sp, U0, cfg).rows.back().U;
    };
    const Vec ref = terminal(0.05 / 16.0);
    const Vec c = terminal(0.05), f = terminal(0.025);
    double e1 = 0.0, e2 = 0.0;
    for (int a = 0; a < 2; ++a) {
      e1 = std::max(e1, std::abs(c[a] - ref[a]));
      e2 = std::max(e2, std::abs(f[a] - ref[a]));
    }
    const double ratio = e1 / e2;
    add(suite, "RK4 order ratio >= 12", ratio, 12.0, /*expects_exceed=*/true);
    add(suite, "RK4 order ratio <= 20", ratio, 20.0);
  }
  {
    // steady-state detection and the coarse-step negative control
    const SeparablePotential sp(softplus, 1);
    Mat J0(1, 1, 0.0);
    const EnergyFunction energy =
        EnergyFunction::hopfield(NetworkSpec(J0, {1.0}, {0.5}), softplus);
    IntegratorConfig cfg;
    cfg.dt = 1e-3;
    cfg.t_max = 60.0;
    cfg.record_every = 1000;
    const TrajectoryRecord rec = integrate(energy, sp, Vec{2.0}, cfg);
    const bool steady = rec.termination_reason == TerminationReason::SteadyState;
    add(suite, "steady state located at U* = 1/2",
        steady ? std::abs(rec.rows.back().U[0] - 0.5) : 1.0, 1e-8);

    const EnergyFunction stiff =
        EnergyFunction::hopfield(NetworkSpec(J0, {1.0 / 3.0}, {0.0}), softplus);
    IntegratorConfig coarse;
    coarse.dt = 1.0;
    coarse.t_max = 30.0;
    const TrajectoryRecord bad = integrate(stiff, sp, Vec{1.0}, coarse);
    const bool flagged = bad.termination_reason == TerminationReason::NumericalFailure;
    add(suite, "coarse-dt negative control flags failure and positive audit (expects exceedance)",
        flagged ? lyapunov_audit(bad) : 0.0, 1e-9, /*expects_exceed=*/true);
  }
  return suite;
}

SuiteResult verify_kappa(std::uint64_t seed) {
  SuiteResult suite{"kappa", {}};
  Rng rng(seed);
  const ConvexPotential softplus = ConvexPotential::softplus();

  {
    double worst_closed = 0.0, worst_fd = 0.0;
    for (const int n : {1, 2, 4, 16}) {
      const SeparablePotential sp(softplus, n);
      const EnergyFunction energy = EnergyFunction::quadratic_identity(n);
      const KappaReport r = kappa_report(energy, sp, Vec(n, 0.0));
      worst_closed = std::max(worst_closed, std::abs(r.closed_form + n / 4.0));
      worst_fd = std::max({worst_fd, std::abs(r.laplacian + n / 4.0),
                           std::abs(r.divergence + n / 4.0)});
    }
    add(suite, "kappa at origin equals -n/4 (closed form)", worst_closed, 1e-12);
    add(suite, "kappa at origin equals -n/4 (Laplacian and divergence)", worst_fd, 1e-5);
  }
  {
    double worst = 0.0;
    int draws = 0;
    while (draws < 200) {
      for (const int n : {1, 2, 4}) {
        const SeparablePotential sp(softplus, n);
        const EnergyFunction energy =
            (draws % 2 == 0) ? EnergyFunction::quadratic_identity(n)
                             : EnergyFunction::hopfield(random_network(rng, n), softplus);
        const Vec U = rng.uniform_vec(n, -3.0, 3.0);
        const KappaReport r = kappa_report(energy, sp, U);
        worst = std::max(worst,
                         r.max_pairwise_residual / std::max(1.0, std::abs(r.closed_form)));
        ++draws;
      }
    }
    add(suite, "three-route agreement over 200 seeded draws, normalized", worst, 1e-4);
  }
  {
    // steady-state value -sum 1/R_a for vanishing self-couplings
    Mat J(2, 2, 0.0);
    J(0, 1) = J(1, 0) = 0.3;
    const NetworkSpec net(J, {1.0, 2.0}, {0.1, -0.2});
    const SeparablePotential sp(softplus, 2);
    const EnergyFunction energy = EnergyFunction::hopfield(net, softplus);
    const SteadyPoint st = find_steady(energy, sp, Vec{0.0, 0.0});
    if (!st.reached) {
      add(suite, "Hopfield steady state reached", 1.0, 0.0);
    } else {
      const KappaReport r = kappa_report(energy, sp, st.U);
      const double expected = -1.5;
      add(suite, "steady-state kappa equals -sum 1/R_a",
          std::max({std::abs(r.closed_form - expected), std::abs(r.laplacian - expected),
                    std::abs(r.divergence - expected)}),
          1e-5);
      add(suite, "kappa negative at the attracting steady state", r.closed_form, -1e-12);
    }
  }
  {
    const SeparablePotential sp(softplus, 3);
    const EnergyFunction grad3 = EnergyFunction::quadratic_identity(3);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec U = rng.uniform_vec(3, -6.0, 6.0);
      worst = std::max(worst,
                       std::abs(display_kappa_gradient_system(U) - kappa_closed_form(grad3, sp, U)));
    }
    add(suite, "gradient-system closed form vs exponential display", worst, 1e-10);

    Rng jrng(seed ^ 0x5bd1e995ull);
    const NetworkSpec net = random_network(jrng, 3);
    const EnergyFunction energy = EnergyFunction::hopfield(net, softplus);
    worst = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Vec U = rng.uniform_vec(3, -6.0, 6.0);
      worst = std::max(worst,
                       std::abs(display_kappa_hopfield(net, U) - kappa_closed_form(energy, sp, U)));
    }
    add(suite, "Hopfield closed form vs exponential display", worst, 1e-10);

    // dual-chart field form: g^aa dV_a/dt = -dH/dV_a
    worst = 0.0;
    for (int i = 0; i < 50; ++i) {
      const Vec U = rng.uniform_vec(3, -3.0, 3.0);
      const Vec V = sp.to_dual(U);
      const Vec X = vector_field(energy, sp, U);
      const Vec g = sp.d2_diag(U);
      const Vec gradH = energy.grad(V, &U);
      for (int a = 0; a < 3; ++a) {
        const double vdot = g[a] * X[a];
        worst = std::max(worst, std::abs(vdot / g[a] + gradH[a]));
      }
    }
    add(suite, "dual-coordinate field form g^ab dV_b/dt = -dH/dV_a", worst, 1e-12);
  }
  return suite;
}

SuiteResult verify_volume(std::uint64_t seed) {
  SuiteResult suite{"volume", {}};
  Rng rng(seed);
  const ConvexPotential softplus = ConvexPotential::softplus();

  {
    const VolumeLedger led = volume_contraction_run(linear_flow({1.0, 2.0, 3.0}),
                                                    Vec{0.4, -0.7, 1.1}, 1.0, 1e-3);
    add(suite, "linear flow ledger: ln volume ratio = -6",
        std::abs(led.log_volume_ratio + 6.0), 1e-6);
    add(suite, "linear flow ledger: integrated kappa = -6",
        std::abs(led.kappa_integral + 6.0), 1e-6);
  }
  {
    const VolumeLedger led =
        volume_contraction_run(planar_rotation_flow(), Vec{1.0, 0.0}, 10.0, 1e-3);
    add(suite, "planar Hamiltonian flow preserves volume",
        std::max(std::abs(led.log_volume_ratio), std::abs(led.kappa_integral)), 1e-6);
  }
  {
    const SeparablePotential sp(softplus, 2);
    const EnergyFunction energy = EnergyFunction::quadratic_identity(2);
    const VolumeLedger led =
        volume_contraction_run(model_flow(energy, sp), Vec{1.0, -1.0}, 5.0, 1e-3);
    add(suite, "gradient-system ledger discrepancy, relative", led.rel_discrepancy, 1e-3);
  }
  {
    const SeparablePotential sp(softplus, 2);
    const EnergyFunction energy = EnergyFunction::hopfield(random_network(rng, 2), softplus);
    const VolumeLedger led =
        volume_contraction_run(model_flow(energy, sp), Vec{1.0, -0.5}, 5.0, 1e-3);
    add(suite, "Hopfield ledger discrepancy, relative", led.rel_discrepancy, 1e-3);
  }
  {
    // blow-up field must fail with a partial ledger, not crash
    FlowField blow;
    blow.n = 1;
    blow.field = [](const Vec& u) { return Vec{u[0] * u[0]}; };
    blow.jacobian = [](const Vec& u) {
      Mat J(1, 1);
      J(0, 0) = 2.0 * u[0];
      return J;
    };
    blow.sqrt_det = [](const Vec&) { return 1.0; };
    blow.kappa = [](const Vec& u) { return 2.0 * u[0]; };
    const VolumeLedger led = volume_contraction_run(blow, Vec{3.0}, 5.0, 1e-3);
    add(suite, "finite-time blow-up flagged with partial ledger",
        led.status == VolumeLedger::Status::Failed && !led.rows.empty() ? 0.0 : 1.0, 0.0);
  }
  return suite;
}

std::vector<SuiteResult> verify_suites(const std::string& which, std::uint64_t seed) {
  std::vector<SuiteResult> out;
  const bool all = which == "all";
  if (all || which == "legendre") out.push_back(verify_legendre(seed));
  if (all || which == "geometry") out.push_back(verify_geometry(seed));
  if (all || which == "lyapunov") out.push_back(verify_lyapunov(seed));
  if (all || which == "kappa") out.push_back(verify_kappa(seed));
  if (all || which == "volume") out.push_back(verify_volume(seed));
  if (out.empty())
    throw ConfigError("verify: unknown suite '" + which +
                      "' (expected legendre|geometry|lyapunov|kappa|volume|all)");
  return out;
}

}  // namespace hessfield
