#include <cmath>

#include "doctest.h"
#include "json.hpp"
#include "lciso/deficit.hpp"
#include "lciso/errors.hpp"
#include "lciso/measure_config.hpp"
#include "lciso/verifier.hpp"

using namespace lciso;

namespace {

MeasureModel perturbed() {
  return MeasureModel::custom([](double t) {
    const double s = std::min(t, 1.0 - t);
    return s * (1.0 - s) * (1.0 + 0.5 * std::sin(20.0 * s));
  }, {}, "perturbed");
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("trial generators are independent of order") {
  TrialRng a(42, 7);
  TrialRng b(42, 7);
  TrialRng c(42, 8);
  const double first = a.uniform();
  CHECK(first == b.uniform());
  CHECK(first != c.uniform());
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const int k = a.integer(1, 5);
    CHECK(k >= 1);
    CHECK(k <= 5);
  }
}

TEST_CASE("random sets stay inside the quantile band") {
  const MeasureModel g = MeasureModel::gaussian();
  for (std::uint64_t t = 0; t < 200; ++t) {
    TrialRng rng(1, t);
    const IntervalSet s = random_interval_set(g, rng);
    CHECK(s.size() >= 1);
    CHECK(s.size() <= 5);
    for (const Interval& iv : s.intervals()) {
      CHECK(g.cdf(iv.lo) >= g.quantile_eps() - 1e-15);
      CHECK(g.cdf(iv.hi) <= 1.0 - g.quantile_eps() + 1e-15);
    }
  }
}

TEST_CASE("shifting property") {
  for (const MeasureModel& m : {MeasureModel::gaussian(), MeasureModel::laplace(1.0)}) {
    const VerificationReport r = check_shifting_property(m, 10000, 42);
    CHECK(r.failures == 0);
    CHECK(r.passed());
    CHECK(r.trials == 10000);
  }
  const VerificationReport bad = check_shifting_property(perturbed(), 10000, 42);
  CHECK(bad.failures >= 1);
  CHECK_FALSE(bad.passed());
  CHECK_FALSE(bad.details.empty());
  CHECK(bad.details.size() <= 20);
  CHECK(bad.status() == "fail");
}

TEST_CASE("reports are deterministic") {
  const VerificationReport a = check_shifting_property(perturbed(), 2000, 9);
  const VerificationReport b = check_shifting_property(perturbed(), 2000, 9);
  CHECK(to_json(a) == to_json(b));
  const nlohmann::json j = nlohmann::json::parse(to_json(a));
  CHECK(j["suite"] == a.suite);
  CHECK(j["seed"] == 9);
}

TEST_CASE("brute force minimum perimeter") {
  const MeasureModel g = MeasureModel::gaussian();
  double previous = INFINITY;
  for (int n : {40, 50, 60}) {
    const double v = brute_force_min_perimeter(g, 0.3, 0.0, 1, n);
    CHECK(v >= g.profile(0.3 - kBinHalfWidth) - 1e-12);
    CHECK(v <= previous + 0.05);
    previous = v;
  }
  CHECK(std::fabs(previous - g.profile(0.3)) < 0.01);

  const double bound = lower_bound_perimeter(g, 0.3, 0.2);
  const double found = brute_force_min_perimeter(g, 0.3, 0.2, 2, 40);
  // Bin slack: the bound moves by at most about 0.03 across a 0.01 bin.
  CHECK(found >= lower_bound_perimeter(g, 0.31, 0.21) - 0.05);
  CHECK(std::fabs(found - bound) < 0.05);

  const MeasureModel laplace = MeasureModel::laplace(1.0);
  const double flat = brute_force_min_perimeter(laplace, 0.4, 0.2, 2, 40);
  CHECK(std::fabs(flat - laplace.profile(0.4)) <= 0.011);

  CHECK_THROWS_AS(brute_force_min_perimeter(g, 0.3, 0.2, 4, 40), OutOfDomain);
  CHECK_THROWS_AS(brute_force_min_perimeter(g, 0.3, 0.2, 2, 61), OutOfDomain);
  CHECK_THROWS_AS(brute_force_min_perimeter(g, 0.3, 0.55, 1, 10), EmptyBin);
}

TEST_CASE("enumeration counts") {
  std::size_t count = 0;
  enumerate_interval_sets(MeasureModel::gaussian(), 1, 3,
                          [&](const EnumeratedSet&) { ++count; });
  // Five grid points give ten intervals; the whole line is excluded.
  CHECK(count == 9);
}

TEST_CASE("bound enumeration on the built-ins") {
  for (const MeasureModel& m : {MeasureModel::gaussian(), MeasureModel::logistic(1.0)}) {
    const VerificationReport r = verify_theorem_main(m, 20, 2);
    CHECK(r.failures == 0);
    CHECK(r.worst_violation <= 1e-7);
  }
  const VerificationReport laplace = verify_theorem_main(MeasureModel::laplace(1.0), 20, 2);
  CHECK(laplace.failures == 0);
  CHECK(laplace.note.find("attaining the bound") != std::string::npos);
}

TEST_CASE("reducer suite") {
  const VerificationReport r = verify_reducer(MeasureModel::gaussian(), 300, 1);
  CHECK(r.failures == 0);
  CHECK(r.trials == 300);
}

TEST_CASE("continuity suite") {
  const VerificationReport g = verify_continuity(MeasureModel::gaussian(), 0.25, 30);
  CHECK(g.applicable);
  CHECK(g.passed());
  const VerificationReport logistic = verify_continuity(MeasureModel::logistic(1.0), 0.25, 30);
  CHECK(logistic.applicable);
  CHECK(logistic.passed());
  const VerificationReport laplace = verify_continuity(MeasureModel::laplace(1.0), 0.3, 30);
  CHECK_FALSE(laplace.applicable);
  CHECK(laplace.status() == "not-applicable");
}

TEST_CASE("exponential equivalence") {
  CHECK(verify_exp_equivalence(MeasureModel::laplace(1.0)).passed());
  CHECK(verify_exp_equivalence(MeasureModel::laplace(2.0)).passed());
  CHECK(verify_exp_equivalence(MeasureModel::gaussian()).passed());
  CHECK(verify_exp_equivalence(
            MeasureModel::custom([](double t) { return std::min(t, 1.0 - t); }))
            .passed());
}

}  // TEST_SUITE
