#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lciso/interval_set.hpp"
#include "lciso/measure.hpp"

namespace lciso {

struct VerificationReport {
  std::string suite;
  std::size_t trials = 0;
  std::size_t failures = 0;
  double worst_violation = 0.0;
  std::uint64_t seed = 0;
  bool applicable = true;
  std::string note;
  /// Replayable descriptions of the first failing inputs (capped).
  std::vector<std::string> details;

  bool passed() const { return !applicable || failures == 0; }
  /// "pass", "fail" or "not-applicable".
  std::string status() const;
};

std::string to_json(const VerificationReport& report);

/// Random generator for trial `trial` of a suite seeded with `seed`. Trials
/// are independent of each other and of execution order.
class TrialRng {
 public:
  TrialRng(std::uint64_t seed, std::uint64_t trial);
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  int integer(int lo, int hi);

 private:
  std::mt19937_64 gen_;
};

/// 1..5 intervals with endpoint quantiles uniform in [eps, 1 - eps].
IntervalSet random_interval_set(const MeasureModel& m, TrialRng& rng, int max_intervals = 5);

/// Every union of at most k_max intervals whose endpoints are distinct points
/// of {0, 1/(n+1), ..., n/(n+1), 1} (0 and 1 standing for -inf and +inf),
/// excluding sets of measure within prob_tol of 0 or 1.
struct EnumeratedSet {
  const IntervalSet* set;
  double mu;
  double lambda;
  double perimeter;
};

void enumerate_interval_sets(const MeasureModel& m, int k_max, int grid_n,
                             const std::function<void(const EnumeratedSet&)>& visit);

VerificationReport check_shifting_property(const MeasureModel& m, std::size_t trials,
                                           std::uint64_t seed);

/// Minimal perimeter over enumerated sets with |m(s) - m_bin| <= 0.01 and
/// |lambda(s) - lambda_bin| <= 0.01, where m_bin = min(mu_bin, 1 - mu_bin).
/// Requires k_max <= 3 and grid_n <= 60; throws EmptyBin if nothing lands in
/// the bin.
double brute_force_min_perimeter(const MeasureModel& m, double mu_bin, double lambda_bin,
                                 int k_max, int grid_n);

inline constexpr double kBinHalfWidth = 0.01;

VerificationReport verify_theorem_main(const MeasureModel& m, int grid_n = 40, int k_max = 2);

VerificationReport verify_reducer(const MeasureModel& m, std::size_t trials, std::uint64_t seed);

VerificationReport verify_continuity(const MeasureModel& m, double x, int depth);

VerificationReport verify_exp_equivalence(const MeasureModel& m);

}  // namespace lciso
