#pragma once

// Strictly convex scalar potentials, their derivative chains through third
// order, Legendre duals, and the primal/dual coordinate maps they induce.

#include <functional>
#include <limits>
#include <string>

#include "hessfield/common.hpp"

namespace hessfield {

/// Value and first three derivatives of the softplus potential
/// ln(1 + e^x) at one point. d1 is the sigmoid; the chain continues as
/// d2 = s(1-s) and d3 = s(1-s)(1-2s). Overflow-safe for |x| up to ~700.
struct SoftplusChain {
  double value;
  double d1;
  double d2;
  double d3;
};

SoftplusChain softplus_chain(double x);

double sigmoid(double x);
double logit(double v);  // inverse of the sigmoid on (0,1)

/// Open interval; +-inf bounds mean unbounded on that side.
struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  bool contains(double x) const { return x > lo && x < hi; }
};

enum class PotentialKind { Softplus, Quadratic, Custom };

/// A strictly convex one-variable potential psi with analytic derivatives
/// through third order and its Legendre dual psi*. The dual variable
/// x* = psi'(x) ranges over the open dual_domain ((0,1) for softplus).
class ConvexPotential {
 public:
  static ConvexPotential softplus();
  static ConvexPotential quadratic(double coefficient);

  /// Hooks for a user-supplied potential. d3 may be left empty, in which
  /// case it is produced by central differences of d2 with step
  /// cbrt(eps) * max(1, |x|). The declared domains are open intervals.
  struct CustomSpec {
    std::function<double(double)> eval;
    std::function<double(double)> d1;
    std::function<double(double)> d2;
    std::function<double(double)> d3;  // optional
    Interval domain;
    Interval dual_domain;
  };
  static ConvexPotential custom(CustomSpec spec);

  PotentialKind kind() const { return kind_; }
  double coefficient() const { return coefficient_; }  // Quadratic only

  double eval(double x) const;
  double d1(double x) const;
  double d2(double x) const;
  double d3(double x) const;

  /// psi*(x*). DomainError if x* is on or outside the boundary of the
  /// open dual domain.
  double dual_eval(double x_star) const;

  /// x such that psi'(x) = x* (the inverse activation). Closed form for
  /// Softplus and Quadratic; safeguarded Newton for Custom.
  double dual_inverse(double x_star) const;

  /// psi'' evaluated at dual_inverse(x*), avoiding the inverse where a
  /// closed form exists (v(1-v) for softplus, c for quadratic).
  double d2_from_dual(double x_star) const;

  const Interval& domain() const { return domain_; }
  const Interval& dual_domain() const { return dual_domain_; }

 private:
  ConvexPotential() = default;
  void require_in_domain(double x) const;
  void require_in_dual_domain(double x_star) const;

  PotentialKind kind_ = PotentialKind::Softplus;
  double coefficient_ = 1.0;
  CustomSpec hooks_;  // Custom only
  Interval domain_;
  Interval dual_domain_;
};

struct LegendrePoint {
  double x;
  double psi_star;
};

/// Legendre transform point: solves psi'(x) = x* and returns x together
/// with psi*(x*) = x x* - psi(x). For Custom potentials the solve is a
/// safeguarded Newton iteration (bisection fallback on a monotonicity
/// bracket) to |psi'(x) - x*| <= 1e-12, capped at 200 iterations.
LegendrePoint legendre_dual(const ConvexPotential& p, double x_star);

/// Psi(U) = sum_a psi(U^a). Its Hessian is diagonal with entries psi''(U^a).
class SeparablePotential {
 public:
  SeparablePotential(ConvexPotential psi, int dimension);

  int dimension() const { return n_; }
  const ConvexPotential& per_coordinate() const { return psi_; }

  double value(const Vec& U) const;
  double dual_value(const Vec& V) const;  // Psi*(V) = sum psi*(V_a)

  /// V_a = psi'(U^a) componentwise.
  Vec to_dual(const Vec& U) const;

  /// U = Upsilon^{-1}(V) componentwise; DomainError naming the offending
  /// index when a component is not strictly inside the dual domain.
  Vec from_dual(const Vec& V) const;

  Vec d1_diag(const Vec& U) const;
  Vec d2_diag(const Vec& U) const;
  Vec d3_diag(const Vec& U) const;

 private:
  void require_dimension(const Vec& v, const char* what) const;

  ConvexPotential psi_;
  int n_;
};

}  // namespace hessfield
