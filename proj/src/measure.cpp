#include "lciso/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "lciso/errors.hpp"
#include "lciso/numerics.hpp"
#include "lciso/special_functions.hpp"

namespace lciso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Custom profiles: the quantile table runs from t = 1/2 down to this level;
// smaller quantiles (only reached by cdf in the far tail) use a log substitution.
constexpr double kTableFloor = 1e-14;
constexpr double kNodeRatio = 0.8408964152537145;  // 2^{-1/4}
constexpr double kQuadAbsTol = 1e-15;
constexpr double kQuadRelTol = 1e-14;

std::string format_param(const char* key, double v) {
  std::ostringstream os;
  os.precision(15);
  os << key << "=" << v;
  return os.str();
}

}  // namespace

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::Gaussian:
      return "gaussian";
    case MeasureKind::Logistic:
      return "logistic";
    case MeasureKind::Laplace:
      return "laplace";
    case MeasureKind::CustomProfile:
      return "custom";
  }
  return "unknown";
}

struct MeasureModel::CustomTable {
  ProfileFunction raw;
  double j0 = 0.0;       // J(0+)
  bool bounded = false;  // J(0+) > 0 <=> finite support
  std::vector<double> t; // descending: t[0] = 1/2, ..., t.back() = kTableFloor (or 0)
  std::vector<double> x; // x[k] = F^{-1}(t[k]), x[0] = 0
  std::vector<double> kinks;  // ascending, inside (0, 1/2)

  double J(double s) const { return raw(std::min(s, 1.0 - s)); }
  double inv_J(double s) const { return 1.0 / J(s); }

  // Sum of integrate(g, a, b) over the pieces of [lo, hi] cut at the kinks,
  // with map() sending a kink to the integration variable.
  template <class G, class Map>
  double piecewise(G&& g, double lo, double hi, Map&& map) const {
    double total = 0.0;
    double a = map(lo);
    auto it = std::upper_bound(kinks.begin(), kinks.end(), lo);
    for (; it != kinks.end() && *it < hi; ++it) {
      const double b = map(*it);
      total += numerics::integrate(g, a, b, kQuadAbsTol, kQuadRelTol).value;
      a = b;
    }
    return total + numerics::integrate(g, a, map(hi), kQuadAbsTol, kQuadRelTol).value;
  }

  // integral_{lo}^{hi} dt / J(t), 0 < lo <= hi <= 1/2.
  double integral(double lo, double hi) const {
    if (lo == hi) return 0.0;
    return piecewise([this](double s) { return inv_J(s); }, lo, hi, [](double v) { return v; });
  }

  // Same integral in the variable u = log t, for the far tail below the table.
  double log_integral(double lo, double hi) const {
    if (lo == hi) return 0.0;
    return piecewise(
        [this](double u) {
          const double s = std::exp(u);
          return s / J(s);
        },
        lo, hi, [](double v) { return std::log(v); });
  }
};

MeasureModel MeasureModel::gaussian(MeasureOptions options) {
  MeasureModel m;
  m.kind_ = MeasureKind::Gaussian;
  m.support_lo_ = -kInf;
  m.support_hi_ = kInf;
  m.options_ = options;
  m.name_ = "gaussian";
  return m;
}

MeasureModel MeasureModel::logistic(double scale, MeasureOptions options) {
  if (!(scale > 0.0) || !std::isfinite(scale))
    throw InvalidMeasure("logistic scale must be positive and finite");
  MeasureModel m;
  m.kind_ = MeasureKind::Logistic;
  m.parameter_ = scale;
  m.support_lo_ = -kInf;
  m.support_hi_ = kInf;
  m.options_ = options;
  m.name_ = "logistic(" + format_param("s", scale) + ")";
  return m;
}

MeasureModel MeasureModel::laplace(double rate, MeasureOptions options) {
  if (!(rate > 0.0) || !std::isfinite(rate))
    throw InvalidMeasure("laplace rate must be positive and finite");
  MeasureModel m;
  m.kind_ = MeasureKind::Laplace;
  m.parameter_ = rate;
  m.support_lo_ = -kInf;
  m.support_hi_ = kInf;
  m.options_ = options;
  m.name_ = "laplace(" + format_param("c", rate) + ")";
  return m;
}

MeasureModel MeasureModel::custom(ProfileFunction profile, MeasureOptions options,
                                  std::string label, std::vector<double> breakpoints) {
  if (!profile) throw InvalidMeasure("custom profile function is empty");

  // Symmetry and positivity, sampled on a grid that reaches into both tails.
  for (int i = 1; i <= 400; ++i) {
    const double t = (i <= 200) ? 0.5 * std::pow(1e-8, (200.0 - i) / 200.0) : i / 802.0;
    const double a = profile(t);
    const double b = profile(1.0 - t);
    if (!(a > 0.0) || !std::isfinite(a))
      throw InvalidMeasure("custom profile must be positive and finite on (0,1); J(" +
                           std::to_string(t) + ") = " + std::to_string(a));
    if (std::fabs(a - b) > 1e-10 * std::max(1.0, std::fabs(a)))
      throw InvalidMeasure("custom profile is not symmetric about 1/2 at t = " +
                           std::to_string(t));
  }

  auto table = std::make_shared<CustomTable>();
  table->raw = std::move(profile);
  for (double b : breakpoints) {
    const double s = std::min(b, 1.0 - b);
    if (s > 0.0 && s < 0.5) table->kinks.push_back(s);
  }
  std::sort(table->kinks.begin(), table->kinks.end());
  table->kinks.erase(std::unique(table->kinks.begin(), table->kinks.end()), table->kinks.end());
  table->j0 = table->raw(1e-15);
  table->bounded = table->j0 > 1e-12;

  table->t.push_back(0.5);
  table->x.push_back(0.0);
  double t = 0.5;
  while (t > kTableFloor) {
    const double next = std::max(t * kNodeRatio, kTableFloor);
    table->x.push_back(table->x.back() - table->integral(next, t));
    table->t.push_back(next);
    t = next;
  }
  double lo = -kInf;
  if (table->bounded) {
    table->x.push_back(table->x.back() - table->integral(0.0, kTableFloor));
    table->t.push_back(0.0);
    lo = table->x.back();
  }

  MeasureModel m;
  m.kind_ = MeasureKind::CustomProfile;
  m.support_lo_ = lo;
  m.support_hi_ = -lo;
  m.options_ = options;
  m.name_ = std::move(label);
  m.custom_ = std::move(table);
  return m;
}

double MeasureModel::builtin_cdf(double x) const {
  switch (kind_) {
    case MeasureKind::Gaussian:
      return special::normal_cdf(x);
    case MeasureKind::Logistic: {
      const double z = x / parameter_;
      if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
      const double e = std::exp(z);
      return e / (1.0 + e);
    }
    case MeasureKind::Laplace:
      return x <= 0.0 ? 0.5 * std::exp(parameter_ * x) : 1.0 - 0.5 * std::exp(-parameter_ * x);
    case MeasureKind::CustomProfile:
      break;
  }
  return 0.0;
}

double MeasureModel::builtin_density(double x) const {
  switch (kind_) {
    case MeasureKind::Gaussian:
      return special::normal_pdf(x);
    case MeasureKind::Logistic: {
      const double e = std::exp(-std::fabs(x) / parameter_);
      return e / (parameter_ * (1.0 + e) * (1.0 + e));
    }
    case MeasureKind::Laplace:
      return 0.5 * parameter_ * std::exp(-parameter_ * std::fabs(x));
    case MeasureKind::CustomProfile:
      break;
  }
  return 0.0;
}

// Closed-form inverse on (0, 1/2], polished by bracketed Newton when the
// closed form misses the target by more than prob_tol.
double MeasureModel::builtin_quantile_lower(double p) const {
  double x = 0.0;
  switch (kind_) {
    case MeasureKind::Gaussian:
      x = special::normal_quantile(p);
      break;
    case MeasureKind::Logistic:
      x = parameter_ * (std::log(p) - std::log1p(-p));
      break;
    case MeasureKind::Laplace:
      x = std::log(2.0 * p) / parameter_;
      break;
    case MeasureKind::CustomProfile:
      break;
  }
  if (std::fabs(builtin_cdf(x) - p) <= options_.prob_tol) return x;

  double lo = x - 1.0;
  double hi = std::min(x + 1.0, 0.0);
  while (builtin_cdf(lo) > p) lo -= 2.0 * (x - lo);
  while (builtin_cdf(hi) < p) hi += 1.0;
  return numerics::solve_increasing([this](double v) { return builtin_cdf(v); },
                                    [this](double v) { return builtin_density(v); }, p, lo,
                                    hi, x, options_.prob_tol * 1e-3);
}

double MeasureModel::custom_quantile_lower(double p) const {
  const CustomTable& tab = *custom_;
  if (p == 0.0) return support_lo_;
  if (p < kTableFloor && !tab.bounded) {
    return tab.x[tab.t.size() - 1] - tab.log_integral(p, kTableFloor);
  }
  // Nodes are descending in t; find the last node with t[k] >= p.
  const auto it = std::lower_bound(tab.t.begin(), tab.t.end(), p, std::greater<double>());
  std::size_t k = static_cast<std::size_t>(it - tab.t.begin());
  if (k == tab.t.size() || tab.t[k] != p) --k;
  return tab.x[k] - tab.integral(p, tab.t[k]);
}

double MeasureModel::custom_cdf_lower(double x) const {
  const CustomTable& tab = *custom_;
  if (x <= support_lo_) return 0.0;
  // x values ascend as k decreases.
  const std::size_t last = tab.x.size() - 1;
  if (x < tab.x[last]) {
    // Far tail of an unbounded custom profile: solve in u = log t.
    double u_hi = std::log(kTableFloor);
    double u_lo = u_hi;
    do {
      u_lo -= 16.0;
      if (u_lo < -700.0) return 0.0;
    } while (custom_quantile_lower(std::exp(u_lo)) > x);
    const double u = numerics::solve_increasing(
        [this](double v) { return custom_quantile_lower(std::exp(v)); },
        [&tab](double v) {
          const double s = std::exp(v);
          return s / tab.J(s);
        },
        x, u_lo, u_hi, 0.5 * (u_lo + u_hi), 1e-15 * std::max(1.0, std::fabs(x)));
    return std::exp(u);
  }
  std::size_t k = 0;
  while (k + 1 < tab.x.size() && tab.x[k + 1] > x) ++k;
  // tab.x[k+1] <= x <= tab.x[k]
  const double t_hi = tab.t[k];
  const double t_lo = tab.t[k + 1];
  const double x_hi = tab.x[k];
  const double x_lo = tab.x[k + 1];
  if (x == x_hi) return t_hi;
  if (x == x_lo) return t_lo;
  const double guess = t_lo + (t_hi - t_lo) * (x - x_lo) / (x_hi - x_lo);
  return numerics::solve_increasing(
      [this](double s) { return custom_quantile_lower(s); },
      [&tab](double s) { return tab.J(s); }, x, t_lo, t_hi, guess,
      1e-15 * std::max(1.0, std::fabs(x)));
}

double MeasureModel::cdf(double x) const {
  if (std::isnan(x)) throw OutOfDomain("cdf argument is NaN");
  if (x <= support_lo_) return 0.0;
  if (x >= support_hi_) return 1.0;
  if (kind_ != MeasureKind::CustomProfile) return builtin_cdf(x);
  if (x == 0.0) return 0.5;
  if (x > 0.0) return 1.0 - custom_cdf_lower(-x);
  return custom_cdf_lower(x);
}

double MeasureModel::density(double x) const {
  if (std::isnan(x)) throw OutOfDomain("density argument is NaN");
  if (std::isinf(x)) return 0.0;
  if (x < support_lo_ || x > support_hi_) return 0.0;
  if (kind_ != MeasureKind::CustomProfile) return builtin_density(x);
  if (x == support_lo_ || x == support_hi_) return custom_->j0;
  const double t = cdf(x);
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return custom_->J(t);
}

double MeasureModel::quantile(double p) const {
  if (!(p >= 0.0 && p <= 1.0)) throw OutOfDomain("quantile requires p in [0,1]");
  if (p == 0.0) return support_lo_;
  if (p == 1.0) return support_hi_;
  if (p == 0.5) return 0.0;
  const bool upper = p > 0.5;
  const double lower_p = upper ? 1.0 - p : p;
  double x;
  if (kind_ == MeasureKind::CustomProfile) {
    if (lower_p < options_.quantile_eps) {
      std::ostringstream os;
      os.precision(17);
      os << "quantile p = " << p << " lies inside the tail band of width "
         << options_.quantile_eps << " for a quadrature-based profile";
      throw QuantileOutOfBand(os.str());
    }
    x = custom_quantile_lower(lower_p);
  } else {
    x = builtin_quantile_lower(lower_p);
  }
  return upper ? -x : x;
}

double MeasureModel::profile(double r) const {
  if (!(r >= 0.0 && r <= 1.0)) throw OutOfDomain("profile requires r in [0,1]");
  if (r == 0.0 || r == 1.0) return 0.0;
  const double s = std::min(r, 1.0 - r);
  switch (kind_) {
    case MeasureKind::Laplace:
      return parameter_ * s;
    case MeasureKind::Logistic:
      return s * (1.0 - s) / parameter_;
    case MeasureKind::CustomProfile:
      return custom_->raw(s);
    case MeasureKind::Gaussian:
      break;
  }
  return builtin_density(builtin_quantile_lower(s));
}

ConcavityReport check_profile_concavity(const MeasureModel& m, int grid_n, double tol) {
  if (grid_n < 3) throw OutOfDomain("check_profile_concavity requires grid_n >= 3");
  const double h = 1.0 / (grid_n + 1);
  std::vector<double> values(static_cast<std::size_t>(grid_n) + 1);
  for (int i = 1; i <= grid_n; ++i) values[static_cast<std::size_t>(i)] = m.profile(i * h);

  ConcavityReport report;
  const int reach = std::max(1, grid_n / 4);
  for (int i = 1; i <= grid_n; ++i) {
    for (int d = 1; d <= reach && i + d <= grid_n; ++d) {
      const int j = i + d;
      const double mid = (d % 2 == 0) ? values[static_cast<std::size_t>(i + d / 2)]
                                      : m.profile(0.5 * (i + j) * h);
      const double chord =
          0.5 * (values[static_cast<std::size_t>(i)] + values[static_cast<std::size_t>(j)]);
      const double violation = chord - mid;
      if (violation > report.worst_violation) {
        report.worst_violation = violation;
        report.worst_u = i * h;
        report.worst_v = j * h;
      }
    }
  }
  report.concave = report.worst_violation <= tol;
  return report;
}

bool satisfies_H(const MeasureModel& m, double eps) {
  if (!(eps > 0.0 && eps <= 0.25)) throw OutOfDomain("satisfies_H requires 0 < eps <= 1/4");
  constexpr int kPoints = 25;  // eps down to eps * 1e-6, quarter decades
  double previous = m.profile(eps) / eps;
  for (int k = 1; k < kPoints; ++k) {
    const double t = eps * std::pow(10.0, -k / 4.0);
    const double ratio = m.profile(t) / t;
    if (!(ratio - previous > 1e-10)) return false;
    previous = ratio;
  }
  return true;
}

}  // namespace lciso
