#include "hessfield/potentials.hpp"

#include <algorithm>
#include <cmath>

namespace hessfield {

namespace {

void require_finite(double x, const char* what) {
  if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite input");
}

constexpr double kSoftplusSwitch = 35.0;  // ln(1+e^-x) is below eps beyond here

}  // namespace

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double logit(double v) { return std::log(v) - std::log1p(-v); }

SoftplusChain softplus_chain(double x) {
  require_finite(x, "softplus_chain");
  const double s = sigmoid(x);
  const double value = x > kSoftplusSwitch ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  const double d2 = s * (1.0 - s);
  return {value, s, d2, d2 * (1.0 - 2.0 * s)};
}

ConvexPotential ConvexPotential::softplus() {
  ConvexPotential p;
  p.kind_ = PotentialKind::Softplus;
  p.dual_domain_ = {0.0, 1.0};
  return p;
}

ConvexPotential ConvexPotential::quadratic(double coefficient) {
  if (!(coefficient > 0.0) || !std::isfinite(coefficient))
    throw DomainError("quadratic potential: coefficient must be positive, got " +
                      std::to_string(coefficient));
  ConvexPotential p;
  p.kind_ = PotentialKind::Quadratic;
  p.coefficient_ = coefficient;
  return p;
}

ConvexPotential ConvexPotential::custom(CustomSpec spec) {
  if (!spec.eval || !spec.d1 || !spec.d2)
    throw DomainError("custom potential: eval, d1 and d2 hooks are required");
  ConvexPotential p;
  p.kind_ = PotentialKind::Custom;
  p.domain_ = spec.domain;
  p.dual_domain_ = spec.dual_domain;
  p.hooks_ = std::move(spec);
  return p;
}

void ConvexPotential::require_in_domain(double x) const {
  require_finite(x, "potential");
  if (kind_ == PotentialKind::Custom && !domain_.contains(x))
    throw DomainError("custom potential: x = " + std::to_string(x) + " outside declared domain");
}

void ConvexPotential::require_in_dual_domain(double x_star) const {
  if (!std::isfinite(x_star) || !dual_domain_.contains(x_star))
    throw DomainError("dual variable x* = " + std::to_string(x_star) +
                      " not strictly inside the dual domain");
}

double ConvexPotential::eval(double x) const {
  require_in_domain(x);
  switch (kind_) {
    case PotentialKind::Softplus:
      return softplus_chain(x).value;
    case PotentialKind::Quadratic:
      return 0.5 * coefficient_ * x * x;
    case PotentialKind::Custom:
      return hooks_.eval(x);
  }
  return 0.0;
}

double ConvexPotential::d1(double x) const {
  require_in_domain(x);
  switch (kind_) {
    case PotentialKind::Softplus:
      return sigmoid(x);
    case PotentialKind::Quadratic:
      return coefficient_ * x;
    case PotentialKind::Custom:
      return hooks_.d1(x);
  }
  return 0.0;
}

double ConvexPotential::d2(double x) const {
  require_in_domain(x);
  switch (kind_) {
    case PotentialKind::Softplus: {
      const double s = sigmoid(x);
      return s * (1.0 - s);
    }
    case PotentialKind::Quadratic:
      return coefficient_;
    case PotentialKind::Custom:
      return hooks_.d2(x);
  }
  return 0.0;
}

double ConvexPotential::d3(double x) const {
  require_in_domain(x);
  switch (kind_) {
    case PotentialKind::Softplus: {
      const double s = sigmoid(x);
      return s * (1.0 - s) * (1.0 - 2.0 * s);
    }
    case PotentialKind::Quadratic:
      return 0.0;
    case PotentialKind::Custom: {
      if (hooks_.d3) return hooks_.d3(x);
      const double h = fd_step(std::cbrt(std::numeric_limits<double>::epsilon()), x);
      return central1(hooks_.d2, x, h);
    }
  }
  return 0.0;
}

double ConvexPotential::dual_eval(double x_star) const {
  require_in_dual_domain(x_star);
  switch (kind_) {
    case PotentialKind::Softplus:
      return x_star * std::log(x_star) + (1.0 - x_star) * std::log1p(-x_star);
    case PotentialKind::Quadratic:
      return 0.5 * x_star * x_star / coefficient_;
    case PotentialKind::Custom: {
      const LegendrePoint lp = legendre_dual(*this, x_star);
      return lp.psi_star;
    }
  }
  return 0.0;
}

double ConvexPotential::dual_inverse(double x_star) const {
  require_in_dual_domain(x_star);
  switch (kind_) {
    case PotentialKind::Softplus:
      return logit(x_star);
    case PotentialKind::Quadratic:
      return x_star / coefficient_;
    case PotentialKind::Custom:
      return legendre_dual(*this, x_star).x;
  }
  return 0.0;
}

double ConvexPotential::d2_from_dual(double x_star) const {
  require_in_dual_domain(x_star);
  switch (kind_) {
    case PotentialKind::Softplus:
      return x_star * (1.0 - x_star);
    case PotentialKind::Quadratic:
      return coefficient_;
    case PotentialKind::Custom:
      return hooks_.d2(dual_inverse(x_star));
  }
  return 0.0;
}

LegendrePoint legendre_dual(const ConvexPotential& p, double x_star) {
  if (!std::isfinite(x_star) || !p.dual_domain().contains(x_star))
    throw DomainError("legendre_dual: x* = " + std::to_string(x_star) +
                      " not strictly inside the dual domain");

  double x;
  switch (p.kind()) {
    case PotentialKind::Softplus:
      x = logit(x_star);
      return {x, x_star * std::log(x_star) + (1.0 - x_star) * std::log1p(-x_star)};
    case PotentialKind::Quadratic:
      x = x_star / p.coefficient();
      return {x, 0.5 * x_star * x_star / p.coefficient()};
    case PotentialKind::Custom:
      break;
  }

  // Safeguarded Newton on psi'(x) = x*. Strict convexity makes psi'
  // strictly increasing, so a sign-changing bracket is found by geometric
  // expansion and every Newton step can be checked against it.
  const double tol = 1e-12;
  const int max_iter = 200;

  auto resid = [&](double y) { return p.d1(y) - x_star; };

  double lo = 0.0, hi = 0.0;
  if (!p.domain().contains(lo)) lo = hi = 0.5 * (p.domain().lo + p.domain().hi);
  double flo = resid(lo), fhi = flo;
  double span = 1.0;
  int expand = 0;
  while (flo > 0.0) {
    lo = std::max(std::nextafter(p.domain().lo, hi), lo - span);
    flo = resid(lo);
    span *= 2.0;
    if (++expand > max_iter) throw ConvergenceError("legendre_dual: bracket expansion failed (low side)");
  }
  span = 1.0;
  expand = 0;
  while (fhi < 0.0) {
    hi = std::min(std::nextafter(p.domain().hi, lo), hi + span);
    fhi = resid(hi);
    span *= 2.0;
    if (++expand > max_iter) throw ConvergenceError("legendre_dual: bracket expansion failed (high side)");
  }

  x = 0.5 * (lo + hi);
  double fx = resid(x);
  for (int iter = 0; iter < max_iter; ++iter) {
    if (std::abs(fx) <= tol) return {x, x * x_star - p.eval(x)};
    const double slope = p.d2(x);
    double next = x - fx / slope;
    if (!(slope > 0.0) || !std::isfinite(next) || next <= lo || next >= hi)
      next = 0.5 * (lo + hi);  // bisection fallback
    x = next;
    fx = resid(x);
    (fx < 0.0 ? lo : hi) = x;
  }
  throw ConvergenceError("legendre_dual: Newton did not reach |psi'(x) - x*| <= 1e-12 in 200 iterations");
}

SeparablePotential::SeparablePotential(ConvexPotential psi, int dimension)
    : psi_(std::move(psi)), n_(dimension) {
  if (dimension <= 0)
    throw DomainError("SeparablePotential: dimension must be positive, got " +
                      std::to_string(dimension));
}

void SeparablePotential::require_dimension(const Vec& v, const char* what) const {
  if (static_cast<int>(v.size()) != n_)
    throw DomainError(std::string(what) + ": expected dimension " + std::to_string(n_) +
                      ", got " + std::to_string(v.size()));
}

double SeparablePotential::value(const Vec& U) const {
  require_dimension(U, "Psi");
  double s = 0.0;
  for (double u : U) s += psi_.eval(u);
  return s;
}

double SeparablePotential::dual_value(const Vec& V) const {
  require_dimension(V, "Psi*");
  double s = 0.0;
  for (double v : V) s += psi_.dual_eval(v);
  return s;
}

Vec SeparablePotential::to_dual(const Vec& U) const {
  require_dimension(U, "to_dual");
  Vec V(n_);
  for (int a = 0; a < n_; ++a) V[a] = psi_.d1(U[a]);
  return V;
}

Vec SeparablePotential::from_dual(const Vec& V) const {
  require_dimension(V, "from_dual");
  Vec U(n_);
  for (int a = 0; a < n_; ++a) {
    if (!std::isfinite(V[a]) || !psi_.dual_domain().contains(V[a]))
      throw DomainError("from_dual: component " + std::to_string(a) + " = " +
                        std::to_string(V[a]) + " not strictly inside the dual domain");
    U[a] = psi_.dual_inverse(V[a]);
  }
  return U;
}

Vec SeparablePotential::d1_diag(const Vec& U) const {
  require_dimension(U, "d1_diag");
  Vec d(n_);
  for (int a = 0; a < n_; ++a) d[a] = psi_.d1(U[a]);
  return d;
}

Vec SeparablePotential::d2_diag(const Vec& U) const {
  require_dimension(U, "d2_diag");
  Vec d(n_);
  for (int a = 0; a < n_; ++a) d[a] = psi_.d2(U[a]);
  return d;
}

Vec SeparablePotential::d3_diag(const Vec& U) const {
  require_dimension(U, "d3_diag");
  Vec d(n_);
  for (int a = 0; a < n_; ++a) d[a] = psi_.d3(U[a]);
  return d;
}

}  // namespace hessfield
