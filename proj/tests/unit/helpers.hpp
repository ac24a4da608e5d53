#pragma once

#include <cmath>
#include <functional>

namespace testutil {

// Adaptive Simpson quadrature; the independent oracle for the defining
// integrals.  tol is absolute.
inline double simpson_step(double a, double b, double fa, double fm,
                           double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double fa, double fm,
                               double fb, double whole, double tol,
                               int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_step(a, m, fa, flm, fm);
  const double right = simpson_step(m, b, fm, frm, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol) {
    return left + right + (left + right - whole) / 15.0;
  }
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-13) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = simpson_step(a, b, fa, fm, fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Central finite difference.
inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double rel_err(double got, double want) {
  if (want == 0.0) {
    return std::abs(got);
  }
  return std::abs(got - want) / std::abs(want);
}

inline double ulp_of(double x) {
  return std::nextafter(std::abs(x), INFINITY) - std::abs(x);
}

}  // namespace testutil
