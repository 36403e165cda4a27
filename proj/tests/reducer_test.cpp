#include <cmath>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "lciso/deficit.hpp"
#include "lciso/reducer.hpp"
#include "lciso/verifier.hpp"

using namespace lciso;

namespace {

constexpr double kInf = INFINITY;

void check_trace(const ReductionTrace& trace) {
  double previous = trace.initial_perimeter;
  for (const ReductionStep& step : trace.steps) {
    CHECK_MESSAGE(step.perimeter_after <= previous + 1e-9, to_string(step.rule));
    CHECK(std::fabs(step.mu_after - trace.initial_mu) <= 1e-9);
    CHECK(std::fabs(step.lambda_after - trace.initial_lambda) <= 1e-9);
    previous = step.perimeter_after;
  }
}

bool same_endpoints(const IntervalSet& a, const IntervalSet& b, double tol) {
  if (a.size() != b.size()) return false;
  const auto close = [tol](double x, double y) {
    return (std::isinf(x) || std::isinf(y)) ? x == y : std::fabs(x - y) <= tol;
  };
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!close(a.intervals()[k].lo, b.intervals()[k].lo)) return false;
    if (!close(a.intervals()[k].hi, b.intervals()[k].hi)) return false;
  }
  return true;
}

bool matches_optimal(const IntervalSet& s, const MeasureModel& m, double mu, double lambda,
                     double tol) {
  const IntervalSet target = optimal_set(m, mu, lambda);
  return same_endpoints(s, target, tol) || same_endpoints(s, reflect(target), tol);
}

}  // namespace

TEST_SUITE("reducer") {

TEST_CASE("quantile coordinates round trip") {
  const MeasureModel g = MeasureModel::gaussian();
  const IntervalSet s = normalize({{-kInf, -1.0}, {0.25, 0.5}, {2.0, kInf}});
  const std::vector<QInterval> q = to_quantile(s, g);
  REQUIRE(q.size() == 3);
  CHECK(q[0].lo == 0.0);
  CHECK(q[2].hi == 1.0);
  CHECK(std::fabs(q[1].mass() - (g.cdf(0.5) - g.cdf(0.25))) <= 1e-15);
  CHECK(same_endpoints(from_quantile(q, g), s, 1e-12));
}

TEST_CASE("decompose examples") {
  const MeasureModel g = MeasureModel::gaussian();
  const StructuralDecomposition d = decompose(normalize({{-kInf, -2.0}, {-0.1, 0.05}}), g);
  CHECK(d.left_tail_parts.size() == 1);
  CHECK(d.inner_left.size() == 1);
  CHECK(d.inner_right.empty());
  CHECK_FALSE(d.straddle_left.has_value());
  CHECK_FALSE(d.straddle_right.has_value());
  CHECK(d.sigma > 0.0);

  const double sigma = 1.5;
  const IntervalSet around = normalize({{-sigma - 1.0, -sigma + 0.1}});
  const StructuralDecomposition ds = decompose(around, g);
  CHECK(std::fabs(ds.sigma + g.quantile(mu_measure(around, g))) <= 1e-12);
  REQUIRE(ds.straddle_left.has_value());
  CHECK(ds.pieces().size() == 1);

  const StructuralDecomposition dd = decompose(optimal_set(g, 0.3, 0.2), g);
  CHECK(dd.left_tail_parts.size() == 1);
  CHECK(dd.right_tail_parts.size() == 1);
  CHECK(dd.inner_left.empty());
  CHECK(dd.inner_right.empty());
  CHECK_FALSE(dd.straddle_left.has_value());
  CHECK_FALSE(dd.straddle_right.has_value());

  CHECK_THROWS_AS(decompose(IntervalSet::right_half_line(-1.0), g), OutOfDomain);
  CHECK_THROWS_AS(decompose(IntervalSet{}, g), DegenerateMeasure);
}

TEST_CASE("the pieces partition the input") {
  const MeasureModel g = MeasureModel::gaussian();
  for (std::uint64_t t = 0; t < 300; ++t) {
    TrialRng rng(17, t);
    IntervalSet s = random_interval_set(g, rng);
    if (mu_measure(s, g) > 0.5) s = complement(s);
    if (asymmetry(s, g).projection == Projection::RightHalfLine) s = reflect(s);
    const StructuralDecomposition d = decompose(s, g);
    CHECK(d.pieces().size() == s.size());
    CHECK(same_endpoints(d.assemble(g), s, 1e-12));
    for (const QInterval& q : d.inner_left) CHECK(q.lo + q.hi < 1.0);
    for (const QInterval& q : d.inner_right) CHECK(q.lo + q.hi >= 1.0);
  }
}

TEST_CASE("collapse_tails examples") {
  const MeasureModel g = MeasureModel::gaussian();
  const IntervalSet s = normalize({{-kInf, -3.0}, {-2.5, -2.2}, {0.0, 0.3}});
  const StructuralDecomposition d = decompose(s, g);
  REQUIRE(d.left_tail_parts.size() == 2);
  const StructuralDecomposition c = collapse_tails(d, g);
  REQUIRE(c.left_tail_parts.size() == 1);
  const double w = g.cdf(-3.0) + g.cdf(-2.2) - g.cdf(-2.5);
  CHECK(c.left_tail_parts[0].lo == 0.0);
  CHECK(std::fabs(c.left_tail_parts[0].hi - w) <= 1e-15);
  CHECK(perimeter(c.assemble(g), g) < perimeter(s, g));
  CHECK(std::fabs(mu_measure(c.assemble(g), g) - mu_measure(s, g)) <= 1e-14);

  const StructuralDecomposition single = decompose(optimal_set(g, 0.3, 0.2), g);
  const StructuralDecomposition same = collapse_tails(single, g);
  CHECK(same.left_tail_parts == single.left_tail_parts);
  CHECK(same.right_tail_parts == single.right_tail_parts);

  const StructuralDecomposition no_right = collapse_tails(d, g);
  CHECK(no_right.right_tail_parts.empty());
}

TEST_CASE("shift_inner examples") {
  const MeasureModel g = MeasureModel::gaussian();
  const IntervalSet s = normalize({{-kInf, -2.0}, {-0.4, -0.2}});
  const StructuralDecomposition d = decompose(s, g);
  REQUIRE(d.inner_left.size() == 1);
  const StructuralDecomposition shifted = shift_inner(d, g);
  CHECK(shifted.inner_left.empty());
  CHECK(shifted.inner_right.empty());
  const double mass_before = d.inner_left[0].mass();
  double mass_after = 0.0;
  for (const QInterval& q : shifted.pieces()) mass_after += q.mass();
  CHECK(std::fabs(mass_after - (mass_before + d.left_tail_parts[0].mass())) <= 1e-12);
  CHECK(perimeter(shifted.assemble(g), g) <= perimeter(s, g) + 1e-12);

  const StructuralDecomposition tails = decompose(optimal_set(g, 0.3, 0.2), g);
  const StructuralDecomposition unchanged = shift_inner(tails, g);
  CHECK(unchanged.pieces() == tails.pieces());
}

TEST_CASE("resolve_cases examples") {
  const MeasureModel g = MeasureModel::gaussian();
  const IntervalSet omega_d = optimal_set(g, 0.3, 0.2);
  const CaseResult fixed = resolve_cases(omega_d, g);
  CHECK(fixed.kase == ReductionCase::BothEmpty);
  CHECK(same_endpoints(fixed.set, omega_d, 1e-9));

  const double mu = 0.2;
  const double sigma = -g.quantile(mu);
  const double left = g.quantile(mu - 0.05);
  const IntervalSet i_only = normalize({{-kInf, left}, {-sigma - 0.05, -sigma + 0.2}});
  REQUIRE(std::fabs(mu_measure(i_only, g) - mu) > 0.0);
  const CaseResult r = resolve_cases(i_only, g);
  CHECK(r.kase == ReductionCase::IOnly);
  CHECK(r.set.size() == 1);

  const IntervalSet sample = normalize({{-kInf, -2.0}, {-1.2, -0.9}});
  const ReductionResult full = reduce(sample, g);
  check_trace(full.trace);
  const AsymmetryReport a = asymmetry(sample, g);
  CHECK(matches_optimal(full.set, g, mu_measure(sample, g), a.lambda, 1e-8));
}

TEST_CASE("reducing an optimal set is a fixed point") {
  const MeasureModel g = MeasureModel::gaussian();
  const IntervalSet omega_d = optimal_set(g, 0.3, 0.2);
  const ReductionResult r = reduce(omega_d, g);
  CHECK(r.trace.steps.size() <= 2);
  CHECK(same_endpoints(r.set, omega_d, 1e-9));
  CHECK(r.kase == ReductionCase::BothEmpty);
}

TEST_CASE("reducing the symmetric two-tail set") {
  const MeasureModel g = MeasureModel::gaussian();
  const IntervalSet s = normalize({{-kInf, -1.0}, {1.0, kInf}});
  const ReductionResult r = reduce(s, g);
  check_trace(r.trace);
  const double mu = mu_measure(s, g);
  const double lambda = asymmetry(s, g).lambda;
  CHECK(std::fabs(mu_measure(r.set, g) - mu) <= 1e-9);
  CHECK(std::fabs(asymmetry(r.set, g).lambda - lambda) <= 1e-9);
  CHECK(std::fabs(perimeter(r.set, g) - lower_bound_perimeter(g, mu, lambda)) <= 1e-9);
  CHECK(matches_optimal(r.set, g, mu, lambda, 1e-8));
}

TEST_CASE("reducing random sets") {
  for (const MeasureModel& m : {MeasureModel::gaussian(), MeasureModel::logistic(1.0),
                                MeasureModel::laplace(1.0)}) {
    for (std::uint64_t t = 0; t < 300; ++t) {
      TrialRng rng(29, t);
      const IntervalSet s = random_interval_set(m, rng, 3);
      const double mu = mu_measure(s, m);
      const double lambda = asymmetry(s, m).lambda;
      if (lambda <= m.prob_tol()) continue;
      const ReductionResult r = reduce(s, m);
      check_trace(r.trace);
      CHECK(perimeter(r.set, m) <= perimeter(s, m) + 1e-9);
      CHECK(std::fabs(mu_measure(r.set, m) - mu) <= 1e-9);
      CHECK(std::fabs(asymmetry(r.set, m).lambda - lambda) <= 1e-9);
      CHECK(matches_optimal(r.set, m, mu, lambda, 1e-8));
    }
  }
}

TEST_CASE("zero asymmetry and degenerate inputs") {
  const MeasureModel g = MeasureModel::gaussian();
  try {
    reduce(IntervalSet::right_half_line(0.3), g);
    FAIL("expected ZeroAsymmetry");
  } catch (const ZeroAsymmetry& e) {
    CHECK(same_endpoints(e.half_line(), IntervalSet::right_half_line(0.3), 1e-12));
  }
  CHECK_THROWS_AS(reduce(IntervalSet{}, g), DegenerateMeasure);
  CHECK_THROWS_AS(reduce(IntervalSet::whole_line(), g), DegenerateMeasure);
}

TEST_CASE("trace serialization") {
  const MeasureModel g = MeasureModel::gaussian();
  const ReductionResult r = reduce(normalize({{-kInf, -1.5}, {-0.5, 0.2}, {1.0, 1.3}}), g);
  std::istringstream in(trace_to_jsonl(r.trace));
  std::string line;
  std::size_t lines = 0;
  while (std::getline(in, line)) {
    const nlohmann::json j = nlohmann::json::parse(line);
    CHECK(j.contains("rule"));
    CHECK(j.contains("set"));
    CHECK(j.contains("perimeter"));
    CHECK(j.contains("lambda"));
    CHECK(j["intervals"].is_array());
    ++lines;
  }
  CHECK(lines == r.trace.steps.size());
  CHECK(to_string(Rule::ShiftHoleToInfinity) == "ShiftHoleToInfinity");
  CHECK(to_string(ReductionCase::IOnly) == "IOnly");
}

}  // TEST_SUITE
