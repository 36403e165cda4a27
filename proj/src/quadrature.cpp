#include <cmath>

#include "lciso/numerics.hpp"

namespace lciso::numerics {

namespace {

// QUADPACK K15 abscissae (non-negative half) and weights; Gauss weights for the
// embedded 7-point rule sit on the odd Kronrod nodes.
constexpr double kXgk[8] = {0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
                            0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
                            0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
                            0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
                            0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
                            0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
                            0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double gauss;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double k = fc * kWgk[7];
  double g = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(center - dx) + f(center + dx);
    k += kWgk[j] * fsum;
    if (j % 2 == 1) g += kWg[j / 2] * fsum;
  }
  return {k * half, g * half};
}

void refine(const std::function<double(double)>& f, double a, double b, double abs_tol,
            double rel_tol, int depth, QuadratureResult& out) {
  const Panel p = gk15(f, a, b);
  out.evaluations += 15;
  const double err = std::fabs(p.kronrod - p.gauss);
  const double tol = std::fmax(abs_tol, rel_tol * std::fabs(p.kronrod));
  const double mid = 0.5 * (a + b);
  if (err <= tol || depth <= 0 || mid <= a || mid >= b) {
    out.value += p.kronrod;
    out.error += err;
    return;
  }
  refine(f, a, mid, 0.5 * abs_tol, rel_tol, depth - 1, out);
  refine(f, mid, b, 0.5 * abs_tol, rel_tol, depth - 1, out);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, double rel_tol, int max_depth) {
  QuadratureResult out;
  if (a == b) return out;
  if (b < a) {
    out = integrate(f, b, a, abs_tol, rel_tol, max_depth);
    out.value = -out.value;
    return out;
  }
  refine(f, a, b, abs_tol, rel_tol, max_depth, out);
  return out;
}

}  // namespace lciso::numerics
