#pragma once

#include <cmath>
#include <functional>
#include <utility>

namespace lciso::numerics {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  int evaluations = 0;
};

/// Adaptive Gauss-Kronrod (G7/K15) integration of f over [a, b] by dyadic
/// panel refinement. A panel is accepted once |K15 - G7| is below its share of
/// max(abs_tol, rel_tol * |panel value|) or max_depth is reached.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol = 1e-14, double rel_tol = 1e-13,
                           int max_depth = 48);

/// Safeguarded Newton iteration for an increasing function g on [lo, hi] with
/// g(lo) <= target <= g(hi). Falls back to bisection whenever the Newton step
/// leaves the bracket. Stops when |g(x) - target| <= f_tol or the bracket is
/// exhausted.
template <class G, class DG>
double solve_increasing(G&& g, DG&& dg, double target, double lo, double hi, double x0,
                        double f_tol, int max_iter = 200) {
  double x = (x0 > lo && x0 < hi) ? x0 : 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double gx = g(x);
    const double r = gx - target;
    if (std::fabs(r) <= f_tol) return x;
    if (r < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double slope = dg(x);
    double next = (slope > 0.0 && std::isfinite(slope)) ? x - r / slope : lo - 1.0;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == x || next == lo || next == hi) return x;
    x = next;
  }
  return x;
}

/// Plain bisection on a predicate that is true on [lo, y*] and false after.
/// Returns the final bracket (last true, first false).
template <class P>
std::pair<double, double> bisect_predicate(P&& holds, double lo, double hi, double tol) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (holds(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lo, hi};
}

}  // namespace lciso::numerics
