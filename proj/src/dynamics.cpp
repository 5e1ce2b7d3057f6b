#include "hessfield/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hessfield/compressibility.hpp"
#include "hessfield/geometry.hpp"

namespace hessfield {

void IntegratorConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("integrator: dt must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw ConfigError("integrator: t_max must be positive");
  if (!(dt < t_max)) throw ConfigError("integrator: dt must be smaller than t_max");
  if (!(steady_tol > 0.0)) throw ConfigError("integrator: steady_tol must be positive");
  if (record_every < 1) throw ConfigError("integrator: record_every must be >= 1");
}

const char* to_string(TerminationReason r) {
  switch (r) {
    case TerminationReason::TMaxReached: return "t_max_reached";
    case TerminationReason::SteadyState: return "steady_state";
    case TerminationReason::NumericalFailure: return "numerical_failure";
  }
  return "unknown";
}

Vec rk4_step(const VectorFn& f, const Vec& u, double dt) {
  const size_t n = u.size();
  const Vec k1 = f(u);
  Vec tmp(n);
  for (size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k1[i];
  const Vec k2 = f(tmp);
  for (size_t i = 0; i < n; ++i) tmp[i] = u[i] + 0.5 * dt * k2[i];
  const Vec k3 = f(tmp);
  for (size_t i = 0; i < n; ++i) tmp[i] = u[i] + dt * k3[i];
  const Vec k4 = f(tmp);
  Vec out(n);
  for (size_t i = 0; i < n; ++i)
    out[i] = u[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

namespace {

// Row evaluators differ between the two model classes; the stepping loop,
// recording cadence and the monotonicity monitor are shared.
struct RowEval {
  VectorFn field;
  std::function<TrajectoryRow(double t, const Vec& U, const Vec& X)> row;
};

constexpr double kMonotoneSlack = 1e-9;

TrajectoryRecord run_loop(const RowEval& ev, const Vec& U0, const IntegratorConfig& cfg) {
  cfg.validate();
  TrajectoryRecord rec;
  if (!all_finite(U0)) {
    rec.termination_reason = TerminationReason::NumericalFailure;
    rec.failure_step = 0;
    rec.failure_detail = "non-finite initial state";
    return rec;
  }

  const long total_steps = static_cast<long>(std::floor(cfg.t_max / cfg.dt + 1e-9));
  Vec U = U0;
  double prev_H = 0.0;
  bool have_prev = false;

  for (long step = 0;; ++step) {
    const double t = step * cfg.dt;
    Vec X;
    try {
      X = ev.field(U);
    } catch (const Error& err) {
      rec.termination_reason = TerminationReason::NumericalFailure;
      rec.failure_step = step;
      rec.failure_detail = std::string("field evaluation failed: ") + err.what();
      return rec;
    }
    if (!all_finite(U) || !all_finite(X)) {
      rec.termination_reason = TerminationReason::NumericalFailure;
      rec.failure_step = step;
      rec.failure_detail = "non-finite state or field";
      return rec;
    }

    const bool steady = norm_inf(X) < cfg.steady_tol;
    const bool last = step >= total_steps;
    if (steady || last || step % cfg.record_every == 0) {
      TrajectoryRow row;
      try {
        row = ev.row(t, U, X);
      } catch (const Error& err) {
        rec.termination_reason = TerminationReason::NumericalFailure;
        rec.failure_step = step;
        rec.failure_detail = std::string("row evaluation failed: ") + err.what();
        return rec;
      }
      rec.rows.push_back(std::move(row));
      if (have_prev && rec.rows.back().H > prev_H + kMonotoneSlack) {
        rec.termination_reason = TerminationReason::NumericalFailure;
        rec.failure_step = step;
        rec.failure_detail = "Lyapunov monotonicity violated: H rose by " +
                             std::to_string(rec.rows.back().H - prev_H);
        return rec;
      }
      prev_H = rec.rows.back().H;
      have_prev = true;
    }

    if (steady) {
      rec.termination_reason = TerminationReason::SteadyState;
      return rec;
    }
    if (last) {
      rec.termination_reason = TerminationReason::TMaxReached;
      return rec;
    }
    U = rk4_step(ev.field, U, cfg.dt);
  }
}

}  // namespace

TrajectoryRecord integrate(const EnergyFunction& energy, const SeparablePotential& sp,
                           const Vec& U0, const IntegratorConfig& cfg) {
  if (static_cast<int>(U0.size()) != sp.dimension() || energy.dimension() != sp.dimension())
    throw ConfigError("integrate: dimension mismatch between U0, potential and energy");

  RowEval ev;
  ev.field = [&energy, &sp](const Vec& u) { return vector_field(energy, sp, u); };
  ev.row = [&energy, &sp](double t, const Vec& U, const Vec& X) {
    TrajectoryRow row;
    row.t = t;
    row.U = U;
    row.V = sp.to_dual(U);
    row.H = energy.value(row.V);
    const LyapunovRate rate = lyapunov_rate(energy, sp, U);
    row.dHdt = rate.dHdt;
    row.kappa = kappa_closed_form(energy, sp, U);
    row.field_norm_g = std::sqrt(std::max(0.0, -rate.minus_gXX));
    (void)X;
    return row;
  };
  return run_loop(ev, U0, cfg);
}

TrajectoryRecord integrate_cohen_grossberg(const CohenGrossbergSpec& spec, const Vec& U0,
                                           const IntegratorConfig& cfg) {
  if (static_cast<int>(U0.size()) != spec.n)
    throw ConfigError("integrate: dimension mismatch between U0 and Cohen-Grossberg spec");

  const SeparablePotential sp(spec.psi, spec.n);
  const VectorFn cg_field = [&spec](const Vec& u) { return cohen_grossberg_field(spec, u); };
  RowEval ev;
  ev.field = cg_field;
  ev.row = [&spec, &sp, cg_field](double t, const Vec& U, const Vec& X) {
    TrajectoryRow row;
    row.t = t;
    row.U = U;
    row.V = sp.to_dual(U);
    const CohenGrossbergLyapunov lyap = cohen_grossberg_lyapunov(spec, U);
    row.H = lyap.value;
    row.dHdt = lyap.rate;
    const auto sqrt_det = [&sp](const Vec& u) { return metric_at(sp, u).sqrt_det; };
    row.kappa = kappa_divergence_oracle(cg_field, sqrt_det, U);
    const Vec g = sp.d2_diag(U);
    double gXX = 0.0;
    for (int a = 0; a < spec.n; ++a) gXX += g[a] * X[a] * X[a];
    row.field_norm_g = std::sqrt(gXX);
    return row;
  };
  return run_loop(ev, U0, cfg);
}

double lyapunov_audit(const TrajectoryRecord& record) {
  if (record.rows.size() < 2) return 0.0;
  double worst = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < record.rows.size(); ++k)
    worst = std::max(worst, record.rows[k + 1].H - record.rows[k].H);
  return worst;
}

}  // namespace hessfield
