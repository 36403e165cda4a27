#pragma once

#include <string>
#include <vector>

#include "lciso/interval_set.hpp"
#include "lciso/measure.hpp"

namespace lciso {

/// The four regions of the feasible (mu, lambda) domain, each with its own
/// perimeter minimizer.
enum class Domain { D1, D2, D3, D4 };

std::string to_string(Domain d);

struct DomainClass {
  Domain id = Domain::D2;
  std::string constraints;
};

struct DeficitReport {
  double mu = 0.0;
  double m = 0.0;
  double lambda = 0.0;
  double perimeter = 0.0;
  double j_at_mu = 0.0;
  double delta = 0.0;
  double k_bound = 0.0;
  double l_bound = 0.0;
  Domain domain = Domain::D2;
};

/// Largest feasible asymmetry for a set of measure mu: min(2m, 1 - m).
double max_asymmetry(double mu);

/// Isoperimetric deficit of s together with its K/L lower bounds and domain.
DeficitReport deficit(const IntervalSet& s, const MeasureModel& m);

/// Sharp deficit lower bound K(x, y). Arguments x > 1/2 are reflected to
/// 1 - x. Requires 0 < x and 0 <= y <= min(2x, 1 - x) (OutOfDomain otherwise);
/// the seam y = x belongs to the first branch.
double K(const MeasureModel& m, double x, double y);

/// Convenient lower bound L(x, y), 0 <= L <= K, on the same domain as K.
double L(const MeasureModel& m, double x, double y);

/// Generalized inverse sup{ y in [0, min(2x, 1-x)] : K(x, y) <= d }.
/// Returns the upper end of the final bisection bracket (within 1e-10 of the
/// supremum, never below it up to rounding); the seam y = x is resolved exactly.
double K_inverse(const MeasureModel& m, double x, double d);

DomainClass classify_domain(double mu, double lambda);

/// J(m - lambda/2) + J(lambda/2) when lambda <= m, J(m + lambda/2) + J(lambda/2)
/// otherwise, with m = min(mu, 1 - mu).
double lower_bound_perimeter(const MeasureModel& m, double mu, double lambda);

/// The minimizer of the perimeter at fixed measure and asymmetry:
/// D1 -> (F^{-1}(l/2), F^{-1}(mu + l/2)),
/// D2 -> (-inf, F^{-1}(mu - l/2)) u (F^{-1}(1 - l/2), inf),
/// D3 -> (F^{-1}(1 - mu - l/2), F^{-1}(1 - l/2)),
/// D4 -> (-inf, F^{-1}(l/2)) u (F^{-1}(1 - mu + l/2), inf).
/// Measure, asymmetry and perimeter are re-checked on return (tolerance 1e-9);
/// a mismatch raises PostconditionFailed.
IntervalSet optimal_set(const MeasureModel& m, double mu, double lambda);

/// K_gamma(1/4, y) / ((y/2) sqrt(2 ln(2/y))) for the standard Gaussian,
/// 0 < y < 0.1.
double gaussian_asymptotic_ratio(double y);

/// One row of a bound scan.
struct ScanRow {
  double mu = 0.0;
  double lambda = 0.0;
  Domain domain = Domain::D2;
  double j_m = 0.0;
  double k = 0.0;
  double l = 0.0;
  double bound = 0.0;
  double optimal_perimeter = 0.0;
};

struct ScanTable {
  std::vector<ScanRow> rows;
  std::size_t omitted = 0;  // infeasible (mu, lambda) cells
};

/// Row for one feasible (mu, lambda); at lambda = 0 the optimal perimeter is
/// that of the matching half-line, J(mu).
ScanRow bound_row(const MeasureModel& m, double mu, double lambda);

/// Scan over explicit mu and lambda values; infeasible cells are omitted.
ScanTable scan_bounds(const MeasureModel& m, const std::vector<double>& mu_values,
                      const std::vector<double>& lambda_values);

/// n x n scan with mu_i = i/(n+1) and lambda_j = j/n * min(2m, 1-m), so every
/// cell is feasible with lambda > 0.
ScanTable scan_bounds_relative(const MeasureModel& m, int n);

/// CSV with header mu,lambda,domain,J_m,K,L,bound,optimal_perimeter and
/// 15-significant-digit numbers.
std::string scan_to_csv(const ScanTable& table);

}  // namespace lciso
