#pragma once

#include <cmath>
#include <string>

#include "secnet/errors.hpp"

namespace secnet {

// Adaptive Simpson quadrature with Richardson extrapolation on [a, b].
// abs_tol is an absolute tolerance on the whole interval; it is split
// between subintervals in the usual way. Throws ToleranceNotMet if the
// recursion depth limit is reached anywhere before the local error bound
// is satisfied.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol,
                        int max_depth = 48) {
  struct Impl {
    F& f;
    bool ok = true;

    double recurse(double a, double m, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
      // Once any branch has exhausted the depth budget the result is
      // discarded and ToleranceNotMet thrown, so stop expanding the tree:
      // an integrand noisier than the tolerance would otherwise grow the
      // full 2^depth recursion before failing.
      if (!ok) return 0.0;
      const double lm = 0.5 * (a + m);
      const double rm = 0.5 * (m + b);
      const double flm = f(lm);
      const double frm = f(rm);
      const double h6 = (b - a) / 12.0;
      const double left = h6 * (fa + 4.0 * flm + fm);
      const double right = h6 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (std::abs(delta) <= 15.0 * tol || !(m > a && b > m)) {
        return left + right + delta / 15.0;
      }
      if (depth <= 0) {
        ok = false;
        return left + right + delta / 15.0;
      }
      return recurse(a, lm, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             recurse(m, rm, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };

  if (!(b > a)) return 0.0;
  Impl impl{f};
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fm = f(m);
  const double fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double result = impl.recurse(a, m, b, fa, fm, fb, whole, abs_tol,
                                     max_depth);
  if (!impl.ok) {
    throw ToleranceNotMet(
        "adaptive_simpson: depth limit " + std::to_string(max_depth) +
        " reached on [" + std::to_string(a) + ", " + std::to_string(b) +
        "] before tolerance " + std::to_string(abs_tol));
  }
  return result;
}

}  // namespace secnet
