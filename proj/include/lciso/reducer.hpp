#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "lciso/errors.hpp"
#include "lciso/interval_set.hpp"
#include "lciso/measure.hpp"

namespace lciso {

/// Interval in quantile coordinates t = F(x); t = 0 and t = 1 stand for -inf
/// and +inf. Its mu-mass is hi - lo and its perimeter J(lo) + J(hi).
struct QInterval {
  double lo = 0.0;
  double hi = 0.0;

  double mass() const { return hi - lo; }
  bool operator==(const QInterval&) const = default;
};

std::vector<QInterval> to_quantile(const IntervalSet& s, const MeasureModel& m);
IntervalSet from_quantile(const std::vector<QInterval>& q, const MeasureModel& m);

/// Pieces of a set of measure mu <= 1/2 with projection (-inf, -sigma), in
/// quantile coordinates: a = mu is the quantile of -sigma, b = 1 - mu that of
/// sigma.
struct StructuralDecomposition {
  std::vector<QInterval> left_tail_parts;   // hi <= a
  std::optional<QInterval> straddle_left;   // lo <= a < hi
  std::vector<QInterval> inner_left;        // a < lo, hi < b, lo + hi < 1
  std::vector<QInterval> inner_right;       // a < lo, hi < b, lo + hi >= 1
  std::optional<QInterval> straddle_right;  // a < lo < b <= hi
  std::vector<QInterval> right_tail_parts;  // lo >= b
  double sigma = 0.0;
  double a = 0.0;
  double b = 1.0;

  /// All pieces, sorted.
  std::vector<QInterval> pieces() const;
  IntervalSet assemble(const MeasureModel& m) const;
};

/// Requires mu(s) <= 1/2 and projection LeftHalfLine (OutOfDomain otherwise).
/// Throws DegenerateMeasure for mu(s) within prob_tol of 0.
StructuralDecomposition decompose(const IntervalSet& s, const MeasureModel& m);

/// Replaces the left tail parts by [0, w] and the right ones by [1 - w', 1].
StructuralDecomposition collapse_tails(const StructuralDecomposition& d, const MeasureModel& m);

/// Packs inner_left against the left straddle (or a) and inner_right against
/// the right straddle (or b). The result has no inner parts.
StructuralDecomposition shift_inner(const StructuralDecomposition& d, const MeasureModel& m);

enum class ReductionCase { BothNonempty, IOnly, JOnly, BothEmpty };

std::string to_string(ReductionCase c);

enum class Rule {
  CollapseLeftTail,
  CollapseRightTail,
  ShiftInnerLeft,
  ShiftInnerRight,
  ShiftHoleRight,
  ShiftHoleToInfinity,
  Reflect,
  Complement,
  Finalize
};

std::string to_string(Rule r);

struct ReductionStep {
  Rule rule = Rule::Finalize;
  /// Set in the working frame (after any pending complement/reflection).
  IntervalSet set_after;
  std::vector<QInterval> quantiles_after;
  /// Real endpoints of quantiles_after, one entry per quantile interval.
  std::vector<Interval> endpoints_after;
  double perimeter_after = 0.0;
  double lambda_after = 0.0;
  /// Measure of the step's set mapped back to the input frame.
  double mu_after = 0.0;
  bool complemented = false;
  bool reflected = false;
};

struct ReductionTrace {
  IntervalSet initial_set;
  double initial_perimeter = 0.0;
  double initial_lambda = 0.0;
  double initial_mu = 0.0;
  std::vector<ReductionStep> steps;
};

struct CaseResult {
  /// Terminal set of the case analysis (Omega_c or Omega_d shape, possibly
  /// complemented or reflected), in the input frame.
  IntervalSet set;
  ReductionCase kase = ReductionCase::BothEmpty;
};

struct ReductionResult {
  IntervalSet set;
  ReductionTrace trace;
  ReductionCase kase = ReductionCase::BothEmpty;
};

/// Carries the matching half-line when there is nothing to reduce.
class ZeroAsymmetry : public Error {
 public:
  ZeroAsymmetry(const std::string& what, IntervalSet half_line)
      : Error(what), half_line_(std::move(half_line)) {}
  const IntervalSet& half_line() const { return half_line_; }

 private:
  IntervalSet half_line_;
};

/// Normalizes omega0 as reduce() does (complement, reflection, tail collapse,
/// inner shifts, which are identities on the A0 u I0 u J0 u B0 form) and runs
/// the case analysis.
CaseResult resolve_cases(const IntervalSet& omega0, const MeasureModel& m);

/// Full perimeter-lowering pipeline. The result equals optimal_set(mu, lambda)
/// or its mirror image. Throws DegenerateMeasure, ZeroAsymmetry, and
/// PostconditionFailed if a runtime center-of-mass check fails.
ReductionResult reduce(const IntervalSet& s, const MeasureModel& m);

/// One JSON object per line: rule, set literal, endpoints as quantiles and
/// reals, perimeter, lambda, mu.
std::string trace_to_jsonl(const ReductionTrace& trace);

}  // namespace lciso
