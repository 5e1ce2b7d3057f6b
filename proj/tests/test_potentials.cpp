#include <doctest.h>

#include <cmath>

#include "hessfield/potentials.hpp"

using namespace hessfield;

namespace {

ConvexPotential quartic_potential() {
  // psi = x^4/4 + x^2/2, strictly convex on the whole line
  ConvexPotential::CustomSpec spec;
  spec.eval = [](double x) { return 0.25 * x * x * x * x + 0.5 * x * x; };
  spec.d1 = [](double x) { return x * x * x + x; };
  spec.d2 = [](double x) { return 3.0 * x * x + 1.0; };
  return ConvexPotential::custom(std::move(spec));
}

}  // namespace

TEST_CASE("softplus chain at the symmetry point") {
  const SoftplusChain c = softplus_chain(0.0);
  CHECK(c.value == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(c.d1 == 0.5);
  CHECK(c.d2 == 0.25);
  CHECK(c.d3 == 0.0);
}

TEST_CASE("softplus chain at ln 2 with finite-difference oracle") {
  const double x = std::log(2.0);
  const SoftplusChain c = softplus_chain(x);
  CHECK(c.d1 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  CHECK(c.d2 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK(c.d3 == doctest::Approx(-2.0 / 27.0).epsilon(1e-13));

  // oracles: central differences of psi (and of psi'' for the third
  // derivative, where differencing psi itself would be rounding-bound)
  const auto psi = [](double y) { return softplus_chain(y).value; };
  const auto psi2 = [](double y) { return softplus_chain(y).d2; };
  const double h = 1e-5;
  const double fd1 = (psi(x + h) - psi(x - h)) / (2 * h);
  const double fd2 = (psi(x + h) - 2 * psi(x) + psi(x - h)) / (h * h);
  const double fd3 = (psi2(x + h) - psi2(x - h)) / (2 * h);
  CHECK(c.d1 == doctest::Approx(fd1).epsilon(1e-9));
  CHECK(c.d2 == doctest::Approx(fd2).epsilon(1e-5));
  CHECK(c.d3 == doctest::Approx(fd3).epsilon(1e-8));
}

TEST_CASE("softplus is overflow-safe out to |x| = 700") {
  const SoftplusChain hi = softplus_chain(700.0);
  CHECK(std::isfinite(hi.value));
  CHECK(hi.value == doctest::Approx(700.0));
  CHECK(hi.d1 == doctest::Approx(1.0));
  const SoftplusChain lo = softplus_chain(-700.0);
  CHECK(std::isfinite(lo.value));
  CHECK(lo.value >= 0.0);
  CHECK(lo.d1 >= 0.0);
}

TEST_CASE("softplus chain rejects non-finite input") {
  CHECK_THROWS_AS(softplus_chain(std::nan("")), DomainError);
  CHECK_THROWS_AS(softplus_chain(INFINITY), DomainError);
}

TEST_CASE("legendre_dual closed forms") {
  const ConvexPotential sp = ConvexPotential::softplus();
  SUBCASE("softplus at the symmetric point") {
    const LegendrePoint lp = legendre_dual(sp, 0.5);
    CHECK(lp.x == 0.0);
    CHECK(lp.psi_star == doctest::Approx(-std::log(2.0)).epsilon(1e-15));
  }
  SUBCASE("unit quadratic is the identity map") {
    const LegendrePoint lp = legendre_dual(ConvexPotential::quadratic(1.0), 3.0);
    CHECK(lp.x == 3.0);
    CHECK(lp.psi_star == 4.5);
  }
  SUBCASE("softplus at 2/3 closes the involution") {
    const LegendrePoint lp = legendre_dual(sp, 2.0 / 3.0);
    CHECK(lp.x == doctest::Approx(std::log(2.0)).epsilon(1e-14));
    const double expected = (2.0 / 3.0) * std::log(2.0 / 3.0) + (1.0 / 3.0) * std::log(1.0 / 3.0);
    CHECK(lp.psi_star == doctest::Approx(expected).epsilon(1e-14));
    CHECK(sp.eval(lp.x) + lp.psi_star == doctest::Approx(lp.x * (2.0 / 3.0)).epsilon(1e-14));
  }
  SUBCASE("boundary of the dual domain is rejected") {
    CHECK_THROWS_AS(legendre_dual(sp, 1.0), DomainError);
    CHECK_THROWS_AS(legendre_dual(sp, 0.0), DomainError);
    CHECK_THROWS_AS(legendre_dual(sp, -0.1), DomainError);
    CHECK_THROWS_AS(sp.dual_eval(1.0), DomainError);
  }
}

TEST_CASE("legendre_dual for a custom potential solves by Newton") {
  const ConvexPotential q = quartic_potential();
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.uniform(-4.0, 4.0);
    const double xs = q.d1(x);
    const LegendrePoint lp = legendre_dual(q, xs);
    CHECK(std::abs(q.d1(lp.x) - xs) <= 1e-12);
    CHECK(q.eval(lp.x) + lp.psi_star == doctest::Approx(lp.x * xs).epsilon(1e-10));
  }
}

TEST_CASE("legendre_dual reports non-convergence") {
  // a discontinuous d1 never meets the 1e-12 residual, so the safeguarded
  // iteration must give up with a ConvergenceError instead of spinning
  ConvexPotential::CustomSpec spec;
  spec.eval = [](double x) { return std::abs(x); };
  spec.d1 = [](double x) { return x < 0.0 ? -1.0 : 1.0; };
  spec.d2 = [](double) { return 1.0; };
  spec.dual_domain = {-1.0, 1.0};
  const ConvexPotential broken = ConvexPotential::custom(std::move(spec));
  CHECK_THROWS_AS(legendre_dual(broken, 0.5), ConvergenceError);
}

TEST_CASE("custom d3 falls back to finite differences of d2") {
  const ConvexPotential q = quartic_potential();
  for (const double x : {-2.0, -0.3, 0.0, 1.7}) {
    CHECK(q.d3(x) == doctest::Approx(6.0 * x).epsilon(1e-6));
  }
}

TEST_CASE("to_dual and from_dual") {
  SUBCASE("softplus origin") {
    const SeparablePotential sp(ConvexPotential::softplus(), 2);
    const Vec V = sp.to_dual({0.0, 0.0});
    CHECK(V[0] == 0.5);
    CHECK(V[1] == 0.5);
  }
  SUBCASE("quadratic is a linear map") {
    const SeparablePotential sp(ConvexPotential::quadratic(2.0), 2);
    const Vec V = sp.to_dual({1.0, -1.0});
    CHECK(V[0] == 2.0);
    CHECK(V[1] == -2.0);
  }
  SUBCASE("softplus at ln 2") {
    const SeparablePotential sp(ConvexPotential::softplus(), 1);
    CHECK(sp.to_dual({std::log(2.0)})[0] == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(sp.from_dual({2.0 / 3.0})[0] == doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
  SUBCASE("boundary component is named in the error") {
    const SeparablePotential sp(ConvexPotential::softplus(), 3);
    try {
      sp.from_dual({0.5, 1.0, 0.5});
      FAIL("expected DomainError");
    } catch (const DomainError& err) {
      CHECK(std::string(err.what()).find("component 1") != std::string::npos);
    }
  }
}

TEST_CASE("derivative chain and involution properties") {
  const ConvexPotential sp = ConvexPotential::softplus();
  Rng rng(2024);
  double worst_fd = 0.0, worst_inv = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double x = rng.uniform(-30.0, 30.0);
    const double d2 = sp.d2(x);
    CHECK(d2 > 0.0);
    const double h = fd_step(1e-6, x);
    const double fd = central1([&](double y) { return sp.d1(y); }, x, h);
    // normalized residual: where the sigmoid saturates at 1, the stencil
    // difference is rounding-bound, so the scale floor carries the check
    worst_fd = std::max(worst_fd, std::abs(fd - d2) / std::max(1.0, d2));
  }
  for (int i = 0; i < 500; ++i) {
    const double x = rng.uniform(-10.0, 10.0);
    const double xs = sp.d1(x);
    worst_inv = std::max(worst_inv, std::abs(sp.eval(x) + sp.dual_eval(xs) - x * xs));
  }
  CHECK(worst_fd <= 1e-5);
  CHECK(worst_inv <= 1e-10);
}

TEST_CASE("dual-map monotonicity") {
  const ConvexPotential sp = ConvexPotential::softplus();
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    double x = rng.uniform(-25.0, 25.0), y = rng.uniform(-25.0, 25.0);
    if (x == y) continue;
    if (x > y) std::swap(x, y);
    CHECK(sp.d1(x) < sp.d1(y));
  }
}

TEST_CASE("integral of the inverse activation closes the dual") {
  const ConvexPotential sp = ConvexPotential::softplus();
  for (const double V : {0.1, 0.35, 0.5, 0.8, 0.99}) {
    const double q = integrate_adaptive_open([](double v) { return logit(v); }, 0.0, V, 1e-11);
    CHECK(q == doctest::Approx(sp.dual_eval(V)).epsilon(1e-8));
  }
}
