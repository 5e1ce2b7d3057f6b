#pragma once

// Shared numeric utilities: small dense matrices, a pinned RNG, central
// finite differences, adaptive quadrature, and the error taxonomy used
// across the library.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace hessfield {

using Vec = std::vector<double>;
using ScalarField = std::function<double(const Vec&)>;
using VectorFn = std::function<Vec(const Vec&)>;

struct Error : std::runtime_error { using std::runtime_error::runtime_error; };
struct DomainError : Error { using Error::Error; };       // input outside an open domain
struct ConvergenceError : Error { using Error::Error; };  // iteration budget exhausted
struct GeometryError : Error { using Error::Error; };     // metric not positive definite
struct ModelError : Error { using Error::Error; };        // invalid model specification
struct NumericError : Error { using Error::Error; };      // non-finite intermediate or quadrature failure
struct ConfigError : Error { using Error::Error; };       // malformed run configuration

bool all_finite(const Vec& v);
double norm_inf(const Vec& v);

/// Dense row-major matrix. Dimensions are desk-scale (n <= a few dozen)
/// everywhere in this library, so no blocking or BLAS is warranted.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols, double fill = 0.0);
  static Mat identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  bool is_square() const { return rows_ == cols_; }
  double max_asymmetry() const;  // max |A_ij - A_ji|, square only

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

Vec matvec(const Mat& A, const Vec& x);
Mat matmul(const Mat& A, const Mat& B);
Mat mat_add_scaled(const Mat& A, const Mat& B, double s);  // A + s*B

/// Signed determinant by LU with partial pivoting. A is consumed.
double lu_det(Mat A);

/// Inverse by Gauss-Jordan with partial pivoting; NumericError on singular input.
Mat gauss_inverse(Mat A);

/// Lower Cholesky factor of an SPD matrix; GeometryError if not positive definite.
Mat cholesky(const Mat& A);

/// Deterministic uniform RNG. The mt19937_64 stream is fully pinned by the
/// standard; the mapping to doubles is hand-rolled so output does not depend
/// on the standard library's distribution implementation.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}
  std::uint64_t next_u64() { return gen_(); }
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  Vec uniform_vec(int n, double lo, double hi);

 private:
  std::mt19937_64 gen_;
};

// Central finite differences. The step for axis a is h0 * max(1, |u_a|).
double fd_step(double h0, double x);
double partial1(const ScalarField& f, Vec u, int axis, double h);
double partial2(const ScalarField& f, Vec u, int axis, double h);
double partial_mixed(const ScalarField& f, Vec u, int a, int b, double ha, double hb);

// One-variable central differences, for derivative oracles in tests.
double central1(const std::function<double(double)>& f, double x, double h);
double central2(const std::function<double(double)>& f, double x, double h);

/// Adaptive Simpson quadrature to an absolute tolerance. Throws NumericError
/// if the recursion depth cap is reached before the local error estimate
/// falls below the budget.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-10, int max_depth = 60);

/// Same, but both endpoints are nudged inward by 1e-13 * |b - a| so that
/// integrands with integrable endpoint singularities (logit at 0) are never
/// evaluated on the boundary. The omitted sliver is below 1e-11 for
/// log-type singularities.
double integrate_adaptive_open(const std::function<double(double)>& f, double a, double b,
                               double abs_tol = 1e-10, int max_depth = 60);

/// Composite Simpson on uniformly spaced samples y_0..y_N with spacing h.
/// Odd interval counts close with a Simpson 3/8 tail (trapezoid for N = 1),
/// keeping the rule 4th order wherever at least three intervals exist.
double simpson_uniform(const std::vector<double>& y, double h);

}  // namespace hessfield
