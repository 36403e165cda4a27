#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "lciso/measure.hpp"

namespace lciso {

/// Open interval with extended-real endpoints.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool operator==(const Interval&) const = default;
};

/// A finite union of disjoint open intervals in canonical form: every interval
/// has lo < hi, intervals are sorted, and consecutive intervals are separated
/// by a gap of positive length. Abutting or overlapping input intervals are
/// merged, which identifies sets that differ by finitely many points.
class IntervalSet {
 public:
  IntervalSet() = default;

  /// Drops empty intervals, sorts, merges overlapping and abutting ones.
  /// Throws InvalidInterval if some lo > hi or an endpoint is NaN.
  static IntervalSet normalize(std::vector<Interval> raw);

  static IntervalSet left_half_line(double x);
  static IntervalSet right_half_line(double x);
  static IntervalSet whole_line();

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool empty() const { return intervals_.empty(); }
  std::size_t size() const { return intervals_.size(); }

  /// True when (lo, hi) is contained in one interval of the set.
  bool contains(double lo, double hi) const;

  bool operator==(const IntervalSet&) const = default;

 private:
  std::vector<Interval> intervals_;
};

inline IntervalSet normalize(std::vector<Interval> raw) {
  return IntervalSet::normalize(std::move(raw));
}

/// mu(s) and mu(s^c), computed from one alternating sum of F over the finite
/// endpoints so that swapping s and its complement swaps the two values
/// exactly.
struct MassPair {
  double inside = 0.0;
  double outside = 1.0;
};

MassPair mass_pair(const IntervalSet& s, const MeasureModel& m);
double mu_measure(const IntervalSet& s, const MeasureModel& m);
/// m(s) = min(mu(s), 1 - mu(s)).
double m_value(const IntervalSet& s, const MeasureModel& m);

/// Sum of the density over all finite endpoints (the mu-perimeter of the set).
double perimeter(const IntervalSet& s, const MeasureModel& m);

IntervalSet complement(const IntervalSet& s);
IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_union(const IntervalSet& a, const IntervalSet& b);
IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b);
/// Image under x -> -x.
IntervalSet reflect(const IntervalSet& s);

enum class Projection { LeftHalfLine, RightHalfLine };

std::string to_string(Projection p);

struct AsymmetryReport {
  double lambda = 0.0;
  double sigma_minus = 0.0;  // F^{-1}(mu(s))
  double sigma_plus = 0.0;   // F^{-1}(1 - mu(s))
  Projection projection = Projection::LeftHalfLine;
  double left_value = 0.0;   // mu(s Δ (-inf, sigma_minus))
  double right_value = 0.0;  // mu(s Δ (sigma_plus, +inf))
};

/// Distance (in mu-measure of the symmetric difference) to the nearest
/// half-line of equal measure. Values within prob_tol of each other count as a
/// tie and select the left half-line. Throws DegenerateMeasure if mu(s) is
/// within prob_tol of 0 or 1.
AsymmetryReport asymmetry(const IntervalSet& s, const MeasureModel& m);

/// Literal syntax "(-inf,-1)u(1,inf)"; "{}" is the empty set. Endpoints are
/// printed with 17 significant digits so that parsing round-trips.
std::string to_literal(const IntervalSet& s);

/// Parses the literal syntax. Endpoints accept inf, -inf, +inf, decimals and
/// rationals such as 1/3. Rejects intervals with lo >= hi (InvalidInterval);
/// the returned raw list still has to be normalized.
std::vector<Interval> parse_set_literal(std::string_view text);

}  // namespace lciso
