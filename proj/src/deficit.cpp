#include "lciso/deficit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lciso/errors.hpp"
#include "lciso/format.hpp"
#include "lciso/numerics.hpp"

namespace lciso {

namespace {

constexpr double kDomainSlack = 1e-9;
constexpr double kInverseTol = 1e-10;
constexpr double kPostTol = 1e-9;
constexpr double kNegativeSlack = 1e-12;

std::string describe(double x, double y) {
  std::ostringstream os;
  os.precision(17);
  os << "(x, y) = (" << x << ", " << y << ")";
  return os.str();
}

struct Args {
  double x;
  double y;
  double y_max;
};

// Reflects x into (0, 1/2] and clamps y into [0, min(2x, 1 - x)] when it is
// within kDomainSlack of the boundary.
Args check_xy(double x, double y) {
  if (!(x > 0.0 && x < 1.0)) throw OutOfDomain("x outside (0, 1): " + describe(x, y));
  if (x > 0.5) x = 1.0 - x;
  const double y_max = std::min(2.0 * x, 1.0 - x);
  if (!(y >= -kDomainSlack && y <= y_max + kDomainSlack))
    throw OutOfDomain("y outside [0, min(2x, 1-x)]: " + describe(x, y));
  return {x, std::clamp(y, 0.0, y_max), y_max};
}

double k_checked(const MeasureModel& m, double x, double y) {
  if (y <= x) return m.profile(x - 0.5 * y) - m.profile(x) + m.profile(0.5 * y);
  return m.profile(x + 0.5 * y) - m.profile(x) + m.profile(0.5 * y);
}

double l_checked(const MeasureModel& m, double x, double y) {
  if (y <= x) return m.profile(0.5 * y) - y / (2.0 * x) * m.profile(x);
  return m.profile(0.5 * y) - y / (2.0 * (1.0 - x)) * m.profile(x);
}

double checked_lambda(double mu, double lambda) {
  if (!(mu > 0.0 && mu < 1.0)) {
    std::ostringstream os;
    os.precision(17);
    os << "mu outside (0, 1): " << mu;
    throw OutOfDomain(os.str());
  }
  const double limit = max_asymmetry(mu);
  if (!(lambda >= -kDomainSlack && lambda <= limit + kDomainSlack)) {
    std::ostringstream os;
    os.precision(17);
    os << "infeasible asymmetry " << lambda << " for mu = " << mu << " (max " << limit << ")";
    throw OutOfDomain(os.str());
  }
  return std::clamp(lambda, 0.0, limit);
}

void require_close(const char* what, double got, double want) {
  if (!(std::fabs(got - want) <= kPostTol)) {
    std::ostringstream os;
    os.precision(17);
    os << "optimal_set: " << what << " is " << got << ", expected " << want;
    throw PostconditionFailed(os.str());
  }
}

}  // namespace

std::string to_string(Domain d) {
  switch (d) {
    case Domain::D1:
      return "D1";
    case Domain::D2:
      return "D2";
    case Domain::D3:
      return "D3";
    case Domain::D4:
      return "D4";
  }
  return "?";
}

double max_asymmetry(double mu) {
  const double m = std::min(mu, 1.0 - mu);
  return std::min(2.0 * m, 1.0 - m);
}

double K(const MeasureModel& m, double x, double y) {
  const Args a = check_xy(x, y);
  return k_checked(m, a.x, a.y);
}

double L(const MeasureModel& m, double x, double y) {
  const Args a = check_xy(x, y);
  return l_checked(m, a.x, a.y);
}

double K_inverse(const MeasureModel& m, double x, double d) {
  if (!(d >= -kNegativeSlack)) throw OutOfDomain("K_inverse needs d >= 0");
  const Args a = check_xy(x, 0.0);
  x = a.x;
  const double y_max = a.y_max;
  // K is a sum of three profile values; compare up to their rounding error.
  d = std::max(d, 0.0) + 8.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, m.profile(0.5));
  if (k_checked(m, x, y_max) <= d) return y_max;
  const auto holds = [&](double y) { return k_checked(m, x, y) <= d; };
  if (x < y_max) {
    const double right_limit = m.profile(1.5 * x) - m.profile(x) + m.profile(0.5 * x);
    if (right_limit <= d) return numerics::bisect_predicate(holds, x, y_max, kInverseTol).second;
    if (k_checked(m, x, x) <= d) return x;
  }
  return numerics::bisect_predicate(holds, 0.0, std::min(x, y_max), kInverseTol).second;
}

DomainClass classify_domain(double mu, double lambda) {
  lambda = checked_lambda(mu, lambda);
  if (mu <= 0.5) {
    if (lambda <= mu) return {Domain::D2, "0 <= lambda <= mu <= 1/2"};
    return {Domain::D1, "mu <= 1/2, mu < lambda <= 1 - mu"};
  }
  if (lambda <= 1.0 - mu) return {Domain::D3, "mu > 1/2, 0 <= lambda <= 1 - mu"};
  return {Domain::D4, "mu > 1/2, 1 - mu < lambda <= mu"};
}

double lower_bound_perimeter(const MeasureModel& m, double mu, double lambda) {
  lambda = checked_lambda(mu, lambda);
  const double mm = std::min(mu, 1.0 - mu);
  if (lambda <= mm) return m.profile(mm - 0.5 * lambda) + m.profile(0.5 * lambda);
  return m.profile(mm + 0.5 * lambda) + m.profile(0.5 * lambda);
}

IntervalSet optimal_set(const MeasureModel& m, double mu, double lambda) {
  const DomainClass dc = classify_domain(mu, lambda);
  lambda = checked_lambda(mu, lambda);
  if (!(lambda > 0.0)) throw OutOfDomain("optimal_set needs lambda > 0");
  constexpr double inf = std::numeric_limits<double>::infinity();
  const double h = 0.5 * lambda;
  IntervalSet s;
  switch (dc.id) {
    case Domain::D1:
      s = normalize({{m.quantile(h), m.quantile(mu + h)}});
      break;
    case Domain::D2:
      s = normalize({{-inf, m.quantile(mu - h)}, {m.quantile(1.0 - h), inf}});
      break;
    case Domain::D3:
      s = normalize({{m.quantile(1.0 - mu - h), m.quantile(1.0 - h)}});
      break;
    case Domain::D4:
      s = normalize({{-inf, m.quantile(h)}, {m.quantile(1.0 - mu + h), inf}});
      break;
  }
  require_close("measure", mu_measure(s, m), mu);
  require_close("asymmetry", asymmetry(s, m).lambda, lambda);
  require_close("perimeter", perimeter(s, m), lower_bound_perimeter(m, mu, lambda));
  return s;
}

DeficitReport deficit(const IntervalSet& s, const MeasureModel& m) {
  const AsymmetryReport asym = asymmetry(s, m);
  const MassPair pair = mass_pair(s, m);
  DeficitReport r;
  r.mu = pair.inside;
  r.m = std::min(pair.inside, pair.outside);
  r.lambda = checked_lambda(r.mu, asym.lambda);
  r.perimeter = perimeter(s, m);
  r.j_at_mu = m.profile(r.mu);
  r.delta = r.perimeter - r.j_at_mu;
  r.k_bound = K(m, r.m, r.lambda);
  r.l_bound = L(m, r.m, r.lambda);
  r.domain = classify_domain(r.mu, r.lambda).id;
  return r;
}

double gaussian_asymptotic_ratio(double y) {
  if (!(y > 0.0 && y < 0.1)) throw OutOfDomain("gaussian_asymptotic_ratio needs 0 < y < 0.1");
  static const MeasureModel gauss = MeasureModel::gaussian();
  // J(x - y/2) - J(x) cancels badly for small y; J' = -quantile for the Gaussian.
  constexpr double x = 0.25;
  const double drop =
      numerics::integrate([](double u) { return gauss.quantile(x - u); }, 0.0, 0.5 * y, 0.0, 1e-14)
          .value;
  const double k = gauss.profile(0.5 * y) + drop;
  return k / (0.5 * y * std::sqrt(2.0 * std::log(2.0 / y)));
}

ScanRow bound_row(const MeasureModel& m, double mu, double lambda) {
  ScanRow row;
  row.mu = mu;
  row.lambda = lambda;
  lambda = checked_lambda(mu, lambda);
  row.domain = classify_domain(mu, lambda).id;
  const double mm = std::min(mu, 1.0 - mu);
  row.j_m = m.profile(mm);
  row.k = K(m, mm, lambda);
  row.l = L(m, mm, lambda);
  row.bound = lower_bound_perimeter(m, mu, lambda);
  row.optimal_perimeter =
      lambda > 0.0 ? perimeter(optimal_set(m, mu, lambda), m) : m.profile(mu);
  return row;
}

ScanTable scan_bounds(const MeasureModel& m, const std::vector<double>& mu_values,
                      const std::vector<double>& lambda_values) {
  ScanTable table;
  for (double mu : mu_values) {
    for (double lambda : lambda_values) {
      if (!(mu > 0.0 && mu < 1.0 && lambda >= 0.0 && lambda <= max_asymmetry(mu))) {
        ++table.omitted;
        continue;
      }
      table.rows.push_back(bound_row(m, mu, lambda));
    }
  }
  return table;
}

ScanTable scan_bounds_relative(const MeasureModel& m, int n) {
  if (n < 1) throw OutOfDomain("scan grid needs n >= 1");
  ScanTable table;
  for (int i = 1; i <= n; ++i) {
    const double mu = static_cast<double>(i) / (n + 1);
    for (int j = 1; j <= n; ++j) {
      const double lambda = static_cast<double>(j) / n * max_asymmetry(mu);
      table.rows.push_back(bound_row(m, mu, lambda));
    }
  }
  return table;
}

std::string scan_to_csv(const ScanTable& table) {
  std::string out = "mu,lambda,domain,J_m,K,L,bound,optimal_perimeter\n";
  for (const ScanRow& r : table.rows) {
    out += fmt15(r.mu) + "," + fmt15(r.lambda) + "," + to_string(r.domain) + "," +
           fmt15(r.j_m) + "," + fmt15(r.k) + "," + fmt15(r.l) + "," + fmt15(r.bound) + "," +
           fmt15(r.optimal_perimeter) + "\n";
  }
  return out;
}

}  // namespace lciso
