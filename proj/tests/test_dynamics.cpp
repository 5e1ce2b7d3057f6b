#include <doctest.h>

#include <cmath>

#include "hessfield/compressibility.hpp"
#include "hessfield/dynamics.hpp"
#include "hessfield/models.hpp"

using namespace hessfield;

namespace {

EnergyFunction single_unit(double R, double I) {
  Mat J(1, 1, 0.0);
  return EnergyFunction::hopfield(NetworkSpec(J, {R}, {I}), ConvexPotential::softplus());
}

}  // namespace

TEST_CASE("config validation") {
  IntegratorConfig cfg;
  cfg.dt = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dt = 2.0;
  cfg.t_max = 1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.dt = 1e-3;
  cfg.record_every = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg.record_every = 10;
  CHECK_NOTHROW(cfg.validate());

  const SeparablePotential sp(ConvexPotential::softplus(), 2);
  CHECK_THROWS_AS(integrate(single_unit(1.0, 0.0), sp, {0.0, 0.0}, cfg), ConfigError);
}

TEST_CASE("runaway gradient flow decreases H until t_max") {
  const SeparablePotential sp(ConvexPotential::softplus(), 1);
  const EnergyFunction energy = EnergyFunction::quadratic_identity(1);
  IntegratorConfig cfg;
  cfg.dt = 1e-2;
  cfg.t_max = 8.0;
  cfg.record_every = 20;
  const TrajectoryRecord rec = integrate(energy, sp, {4.0}, cfg);
  CHECK(rec.termination_reason == TerminationReason::TMaxReached);
  REQUIRE(rec.rows.size() > 3);
  for (size_t k = 0; k + 1 < rec.rows.size(); ++k) {
    CHECK(rec.rows[k + 1].H < rec.rows[k].H);   // strictly decreasing
    CHECK(rec.rows[k + 1].U[0] < rec.rows[k].U[0]);  // sliding toward V -> 0
    CHECK(rec.rows[k + 1].t > rec.rows[k].t);
  }
  CHECK(lyapunov_audit(rec) <= 1e-9);
}

TEST_CASE("driven single unit converges to U* = 1/2") {
  const SeparablePotential sp(ConvexPotential::softplus(), 1);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 60.0;
  cfg.record_every = 500;
  const EnergyFunction unit = single_unit(1.0, 0.5);
  const TrajectoryRecord rec = integrate(unit, sp, {2.0}, cfg);
  CHECK(rec.termination_reason == TerminationReason::SteadyState);

  // bisection oracle on the field locates the rest point independently
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (vector_field(unit, sp, {mid})[0] > 0.0 ? lo : hi) = mid;
  }
  CHECK(0.5 * (lo + hi) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rec.rows.back().U[0] == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-9));
  CHECK(rec.rows.back().field_norm_g <= 1e-9);
}

TEST_CASE("zero-field start terminates immediately") {
  const SeparablePotential sp(ConvexPotential::softplus(), 1);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1.0;
  const TrajectoryRecord rec = integrate(single_unit(1.0, 0.5), sp, {0.5}, cfg);
  CHECK(rec.termination_reason == TerminationReason::SteadyState);
  CHECK(rec.rows.size() == 1);
  CHECK(rec.rows[0].t == 0.0);
}

TEST_CASE("lyapunov_audit flags a deliberately coarse run") {
  const SeparablePotential sp(ConvexPotential::softplus(), 1);
  // relaxation rate ~3 with dt = 1: RK4 amplifies instead of contracting
  const EnergyFunction stiff = single_unit(1.0 / 3.0, 0.0);
  IntegratorConfig cfg;
  cfg.dt = 1.0;
  cfg.t_max = 30.0;
  const TrajectoryRecord rec = integrate(stiff, sp, {1.0}, cfg);
  CHECK(rec.termination_reason == TerminationReason::NumericalFailure);
  CHECK(rec.failure_step >= 0);
  CHECK(lyapunov_audit(rec) > 0.0);
}

TEST_CASE("lyapunov_audit of a single-row record is zero") {
  const SeparablePotential sp(ConvexPotential::softplus(), 1);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1.0;
  const TrajectoryRecord rec = integrate(single_unit(1.0, 0.5), sp, {0.5}, cfg);
  REQUIRE(rec.rows.size() == 1);
  CHECK(lyapunov_audit(rec) == 0.0);
}

TEST_CASE("recorded bookkeeping is re-evaluable") {
  const ConvexPotential softplus = ConvexPotential::softplus();
  const SeparablePotential sp(softplus, 2);
  Mat J(2, 2, 0.0);
  J(0, 1) = J(1, 0) = 0.4;
  const EnergyFunction energy = EnergyFunction::hopfield(NetworkSpec(J, {1.0, 1.5}, {0.2, -0.1}), softplus);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 2.0;
  cfg.record_every = 100;
  const TrajectoryRecord rec = integrate(energy, sp, {1.0, -1.0}, cfg);
  for (const TrajectoryRow& row : rec.rows) {
    CHECK(std::abs(row.kappa - kappa_closed_form(energy, sp, row.U)) <= 1e-12);
    const LyapunovRate r = lyapunov_rate(energy, sp, row.U);
    const double denom = std::max({std::abs(r.dHdt), std::abs(r.minus_gXX), 1e-300});
    CHECK(std::abs(row.dHdt - r.minus_gXX) / denom <= 1e-8);
    CHECK(row.field_norm_g >= 0.0);
  }
}

TEST_CASE("RK4 order on the coupled-pair benchmark") {
  const ConvexPotential softplus = ConvexPotential::softplus();
  const SeparablePotential sp(softplus, 2);
  Mat J(2, 2, 0.0);
  J(0, 1) = J(1, 0) = 0.5;
  const EnergyFunction energy = EnergyFunction::hopfield(NetworkSpec(J, {1.0, 1.5}, {0.2, -0.1}), softplus);
  const Vec U0{1.5, -1.0};
  const auto terminal = [&](double dt) {
    IntegratorConfig cfg;
    cfg.dt = dt;
    cfg.t_max = 2.0;
    cfg.record_every = 1 << 30;
    const TrajectoryRecord rec = integrate(energy, sp, U0, cfg);
    REQUIRE(rec.termination_reason == TerminationReason::TMaxReached);
    return rec.rows.back().U;
  };
  const Vec ref = terminal(0.05 / 16.0);
  const Vec coarse = terminal(0.05);
  const Vec halved = terminal(0.025);
  double e1 = 0.0, e2 = 0.0;
  for (int a = 0; a < 2; ++a) {
    e1 = std::max(e1, std::abs(coarse[a] - ref[a]));
    e2 = std::max(e2, std::abs(halved[a] - ref[a]));
  }
  const double ratio = e1 / e2;
  CHECK(ratio >= 12.0);
  CHECK(ratio <= 20.0);
}

TEST_CASE("non-finite initial state fails cleanly") {
  const SeparablePotential sp(ConvexPotential::softplus(), 1);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 1.0;
  const TrajectoryRecord rec = integrate(single_unit(1.0, 0.0), sp, {std::nan("")}, cfg);
  CHECK(rec.termination_reason == TerminationReason::NumericalFailure);
  CHECK(rec.rows.empty());
}

TEST_CASE("Cohen-Grossberg integration keeps H' decreasing") {
  const ConvexPotential softplus = ConvexPotential::softplus();
  Mat C(2, 2, 0.0);
  C(0, 0) = 1.0;
  C(1, 1) = 0.8;
  C(0, 1) = C(1, 0) = 0.25;
  const CohenGrossbergSpec cg(
      2, [](int, double u) { return 1.0 + 0.1 * u * u; },
      [](int a, double u) { return (a == 0 ? 0.4 : -0.1) - 0.5 * u; }, C, softplus);
  IntegratorConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_max = 3.0;
  cfg.record_every = 100;
  const TrajectoryRecord rec = integrate_cohen_grossberg(cg, {1.5, -1.0}, cfg);
  CHECK(rec.termination_reason != TerminationReason::NumericalFailure);
  REQUIRE(rec.rows.size() > 5);
  for (size_t k = 0; k + 1 < rec.rows.size(); ++k) CHECK(rec.rows[k + 1].H < rec.rows[k].H);
  for (const TrajectoryRow& row : rec.rows) CHECK(row.dHdt <= 0.0);
}
