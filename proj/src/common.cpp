#include "hessfield/common.hpp"

#include <algorithm>
#include <cstdlib>

namespace hessfield {

bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

double norm_inf(const Vec& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

Mat::Mat(int rows, int cols, double fill)
    : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, fill) {}

Mat Mat::identity(int n) {
  Mat I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1.0;
  return I;
}

double Mat::max_asymmetry() const {
  double m = 0.0;
  for (int i = 0; i < rows_; ++i)
    for (int j = i + 1; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - (*this)(j, i)));
  return m;
}

Vec matvec(const Mat& A, const Vec& x) {
  Vec y(A.rows(), 0.0);
  for (int i = 0; i < A.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < A.cols(); ++j) s += A(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Mat matmul(const Mat& A, const Mat& B) {
  Mat C(A.rows(), B.cols(), 0.0);
  for (int i = 0; i < A.rows(); ++i)
    for (int k = 0; k < A.cols(); ++k) {
      const double aik = A(i, k);
      for (int j = 0; j < B.cols(); ++j) C(i, j) += aik * B(k, j);
    }
  return C;
}

Mat mat_add_scaled(const Mat& A, const Mat& B, double s) {
  Mat C = A;
  for (size_t i = 0; i < C.data().size(); ++i) C.data()[i] += s * B.data()[i];
  return C;
}

double lu_det(Mat A) {
  const int n = A.rows();
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
    if (A(piv, k) == 0.0) return 0.0;
    if (piv != k) {
      for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(k, j));
      det = -det;
    }
    det *= A(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = A(i, k) / A(k, k);
      for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
    }
  }
  return det;
}

Mat gauss_inverse(Mat A) {
  const int n = A.rows();
  Mat B = Mat::identity(n);
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(A(i, k)) > std::abs(A(piv, k))) piv = i;
    if (A(piv, k) == 0.0) throw NumericError("gauss_inverse: singular matrix");
    if (piv != k)
      for (int j = 0; j < n; ++j) {
        std::swap(A(piv, j), A(k, j));
        std::swap(B(piv, j), B(k, j));
      }
    const double d = A(k, k);
    for (int j = 0; j < n; ++j) {
      A(k, j) /= d;
      B(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const double f = A(i, k);
      if (f == 0.0) continue;
      for (int j = 0; j < n; ++j) {
        A(i, j) -= f * A(k, j);
        B(i, j) -= f * B(k, j);
      }
    }
  }
  return B;
}

Mat cholesky(const Mat& A) {
  const int n = A.rows();
  Mat L(n, n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = A(i, j);
      for (int k = 0; k < j; ++k) s -= L(i, k) * L(j, k);
      if (i == j) {
        if (!(s > 0.0)) throw GeometryError("cholesky: matrix not positive definite");
        L(i, i) = std::sqrt(s);
      } else {
        L(i, j) = s / L(j, j);
      }
    }
  }
  return L;
}

Vec Rng::uniform_vec(int n, double lo, double hi) {
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
  return v;
}

double fd_step(double h0, double x) { return h0 * std::max(1.0, std::abs(x)); }

double partial1(const ScalarField& f, Vec u, int axis, double h) {
  const double x = u[axis];
  u[axis] = x + h;
  const double fp = f(u);
  u[axis] = x - h;
  const double fm = f(u);
  return (fp - fm) / (2.0 * h);
}

double partial2(const ScalarField& f, Vec u, int axis, double h) {
  const double x = u[axis];
  const double f0 = f(u);
  u[axis] = x + h;
  const double fp = f(u);
  u[axis] = x - h;
  const double fm = f(u);
  return (fp - 2.0 * f0 + fm) / (h * h);
}

double partial_mixed(const ScalarField& f, Vec u, int a, int b, double ha, double hb) {
  const double xa = u[a], xb = u[b];
  u[a] = xa + ha;
  u[b] = xb + hb;
  const double fpp = f(u);
  u[b] = xb - hb;
  const double fpm = f(u);
  u[a] = xa - ha;
  const double fmm = f(u);
  u[b] = xb + hb;
  const double fmp = f(u);
  return (fpp - fpm - fmp + fmm) / (4.0 * ha * hb);
}

double central1(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

double central2(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

namespace {

double simpson_panel(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double& fm) {
  const double m = 0.5 * (a + b);
  fm = f(m);
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_rec(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double fm, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  double flm, frm;
  const double left = simpson_panel(f, a, fa, m, fm, flm);
  const double right = simpson_panel(f, m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  if (depth <= 0) throw NumericError("integrate_adaptive: depth cap reached before tolerance");
  return adaptive_rec(f, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_rec(f, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b);
  double fm;
  const double whole = simpson_panel(f, a, fa, b, fb, fm);
  if (!std::isfinite(whole)) throw NumericError("integrate_adaptive: non-finite integrand sample");
  return adaptive_rec(f, a, fa, b, fb, fm, whole, abs_tol, max_depth);
}

double integrate_adaptive_open(const std::function<double(double)>& f, double a, double b,
                               double abs_tol, int max_depth) {
  const double nudge = 1e-13 * std::abs(b - a);
  if (a < b) return integrate_adaptive(f, a + nudge, b - nudge, abs_tol, max_depth);
  return integrate_adaptive(f, a - nudge, b + nudge, abs_tol, max_depth);
}

double simpson_uniform(const std::vector<double>& y, double h) {
  const size_t n = y.empty() ? 0 : y.size() - 1;  // interval count
  if (n == 0) return 0.0;
  if (n == 1) return 0.5 * h * (y[0] + y[1]);

  size_t even = n;
  double tail = 0.0;
  if (n % 2 != 0) {
    if (n == 3) {
      return 3.0 * h / 8.0 * (y[0] + 3.0 * y[1] + 3.0 * y[2] + y[3]);
    }
    even = n - 3;  // close the last three intervals with the 3/8 rule
    tail = 3.0 * h / 8.0 * (y[even] + 3.0 * y[even + 1] + 3.0 * y[even + 2] + y[even + 3]);
  }
  double s = y[0] + y[even];
  for (size_t i = 1; i < even; i += 2) s += 4.0 * y[i];
  for (size_t i = 2; i < even; i += 2) s += 2.0 * y[i];
  return h / 3.0 * s + tail;
}

}  // namespace hessfield
