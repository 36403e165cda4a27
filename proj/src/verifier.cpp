#include "lciso/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "lciso/deficit.hpp"
#include "lciso/errors.hpp"
#include "lciso/format.hpp"
#include "lciso/reducer.hpp"

namespace lciso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxDetails = 20;

void fail(VerificationReport& r, double violation, const std::string& what) {
  ++r.failures;
  r.worst_violation = std::max(r.worst_violation, violation);
  if (r.details.size() < kMaxDetails) r.details.push_back(what);
}

void observe(VerificationReport& r, double violation) {
  r.worst_violation = std::max(r.worst_violation, violation);
}

double endpoint(double t, const MeasureModel& m) {
  if (t <= 0.0) return -kInf;
  if (t >= 1.0) return kInf;
  return m.quantile(t);
}

// Largest endpoint distance, infinite if the shapes differ.
double endpoint_error(const IntervalSet& x, const IntervalSet& y) {
  if (x.size() != y.size()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Interval& a = x.intervals()[i];
    const Interval& b = y.intervals()[i];
    for (const auto& [p, q] : {std::pair{a.lo, b.lo}, std::pair{a.hi, b.hi}}) {
      if (std::isinf(p) || std::isinf(q)) {
        if (p != q) return kInf;
      } else {
        worst = std::max(worst, std::fabs(p - q));
      }
    }
  }
  return worst;
}

}  // namespace

std::string VerificationReport::status() const {
  if (!applicable) return "not-applicable";
  return failures == 0 ? "pass" : "fail";
}

std::string to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["suite"] = r.suite;
  j["status"] = r.status();
  j["trials"] = r.trials;
  j["failures"] = r.failures;
  j["worst_violation"] = r.worst_violation;
  j["seed"] = r.seed;
  j["note"] = r.note;
  j["details"] = r.details;
  return j.dump(2);
}

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  gen_.seed(seq);
}

double TrialRng::uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

int TrialRng::integer(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<int>(gen_() % span);
}

IntervalSet random_interval_set(const MeasureModel& m, TrialRng& rng, int max_intervals) {
  const int k = rng.integer(1, max_intervals);
  const double eps = m.quantile_eps();
  std::vector<double> t(2 * static_cast<std::size_t>(k));
  for (double& v : t) v = rng.uniform(eps, 1.0 - eps);
  std::sort(t.begin(), t.end());
  std::vector<Interval> raw;
  for (int i = 0; i < k; ++i) raw.push_back({m.quantile(t[2 * i]), m.quantile(t[2 * i + 1])});
  return normalize(std::move(raw));
}

VerificationReport check_shifting_property(const MeasureModel& m, std::size_t trials,
                                           std::uint64_t seed) {
  VerificationReport r;
  r.suite = "shifting";
  r.seed = seed;
  r.trials = trials;
  const double eps = m.quantile_eps();
  for (std::size_t trial = 0; trial < trials; ++trial) {
    TrialRng rng(seed, trial);
    double u = rng.uniform(eps, 1.0 - eps);
    double v = rng.uniform(eps, 1.0 - eps);
    if (u > v) std::swap(u, v);
    if (!(u < v)) continue;
    const double a = m.quantile(u);
    const double b = m.quantile(v);
    const bool right = a + b >= 0.0;
    const double room = right ? (1.0 - eps) - v : u - eps;
    const double shift = (right ? 1.0 : -1.0) * rng.uniform() * room;
    const IntervalSet before = normalize({{a, b}});
    const IntervalSet after = normalize({{m.quantile(u + shift), m.quantile(v + shift)}});
    const double gain = perimeter(after, m) - perimeter(before, m);
    const double hole_gain = perimeter(complement(after), m) - perimeter(complement(before), m);
    const double worst = std::max(gain, hole_gain);
    observe(r, std::max(worst, 0.0));
    if (worst > 1e-10) {
      std::ostringstream os;
      os.precision(17);
      os << "shift " << to_literal(before) << " -> " << to_literal(after)
         << " (quantiles " << u << "," << v << " by " << shift << ") raises the perimeter by "
         << worst;
      fail(r, worst, os.str());
    }
  }
  return r;
}

void enumerate_interval_sets(const MeasureModel& m, int k_max, int grid_n,
                             const std::function<void(const EnumeratedSet&)>& visit) {
  if (k_max < 1 || grid_n < 1) throw OutOfDomain("enumeration needs k_max >= 1 and grid_n >= 1");
  std::vector<double> pts;
  for (int i = 0; i <= grid_n + 1; ++i)
    pts.push_back(endpoint(static_cast<double>(i) / (grid_n + 1), m));
  const int n_pts = static_cast<int>(pts.size());
  std::vector<int> idx;
  std::vector<Interval> raw;
  const std::function<void(int)> extend = [&](int first) {
    if (!idx.empty() && idx.size() % 2 == 0) {
      raw.clear();
      for (std::size_t i = 0; i < idx.size(); i += 2) raw.push_back({pts[idx[i]], pts[idx[i + 1]]});
      const IntervalSet s = normalize(raw);
      const MassPair pair = mass_pair(s, m);
      if (pair.inside > m.prob_tol() && pair.outside > m.prob_tol()) {
        const EnumeratedSet e{&s, pair.inside, asymmetry(s, m).lambda, perimeter(s, m)};
        visit(e);
      }
    }
    if (static_cast<int>(idx.size()) == 2 * k_max) return;
    for (int i = first; i < n_pts; ++i) {
      idx.push_back(i);
      extend(i + 1);
      idx.pop_back();
    }
  };
  extend(0);
}

double brute_force_min_perimeter(const MeasureModel& m, double mu_bin, double lambda_bin,
                                 int k_max, int grid_n) {
  if (k_max < 1 || k_max > 3) throw OutOfDomain("brute force needs 1 <= k_max <= 3");
  if (grid_n < 1 || grid_n > 60) throw OutOfDomain("brute force needs 1 <= grid_n <= 60");
  const double m_bin = std::min(mu_bin, 1.0 - mu_bin);
  double best = kInf;
  enumerate_interval_sets(m, k_max, grid_n, [&](const EnumeratedSet& e) {
    const double mm = std::min(e.mu, 1.0 - e.mu);
    if (std::fabs(mm - m_bin) <= kBinHalfWidth && std::fabs(e.lambda - lambda_bin) <= kBinHalfWidth)
      best = std::min(best, e.perimeter);
  });
  if (std::isinf(best)) {
    std::ostringstream os;
    os << "no enumerated set with m within " << kBinHalfWidth << " of " << m_bin
       << " and lambda within " << kBinHalfWidth << " of " << lambda_bin;
    throw EmptyBin(os.str());
  }
  return best;
}

VerificationReport verify_theorem_main(const MeasureModel& m, int grid_n, int k_max) {
  VerificationReport r;
  r.suite = "theorem-main";
  std::size_t equality_hits = 0;
  enumerate_interval_sets(m, k_max, grid_n, [&](const EnumeratedSet& e) {
    ++r.trials;
    const double lambda = std::min(e.lambda, max_asymmetry(e.mu));
    const double bound = lower_bound_perimeter(m, e.mu, lambda);
    const double gap = bound - e.perimeter;
    observe(r, std::max(gap, 0.0));
    if (std::fabs(gap) <= 1e-12 && lambda > 0.0) ++equality_hits;
    if (gap > 1e-7) {
      std::ostringstream os;
      os.precision(17);
      os << to_literal(*e.set) << ": perimeter " << e.perimeter << " below bound " << bound
         << " at mu=" << e.mu << " lambda=" << lambda;
      fail(r, gap, os.str());
    }
  });
  const int n = 25;
  for (int i = 1; i <= n; ++i) {
    const double mu = static_cast<double>(i) / (n + 1);
    for (int j = 1; j <= n; ++j) {
      const double lambda = static_cast<double>(j) / n * max_asymmetry(mu);
      ++r.trials;
      std::ostringstream os;
      os.precision(17);
      os << "optimal_set(mu=" << mu << ", lambda=" << lambda << ")";
      try {
        const double gap = std::fabs(perimeter(optimal_set(m, mu, lambda), m) -
                                     lower_bound_perimeter(m, mu, lambda));
        observe(r, gap);
        if (gap > 1e-9) fail(r, gap, os.str() + " misses the bound by " + fmt15(gap));
      } catch (const Error& ex) {
        fail(r, kInf, os.str() + ": " + ex.what());
      }
    }
  }
  r.note = "sets attaining the bound with lambda > 0: " + std::to_string(equality_hits);
  return r;
}

VerificationReport verify_reducer(const MeasureModel& m, std::size_t trials, std::uint64_t seed) {
  VerificationReport r;
  r.suite = "reducer";
  r.seed = seed;
  r.trials = trials;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    TrialRng rng(seed, trial);
    const IntervalSet s = random_interval_set(m, rng);
    const std::string input = "trial " + std::to_string(trial) + " " + to_literal(s);
    try {
      const double mu = mu_measure(s, m);
      const double lambda = asymmetry(s, m).lambda;
      const ReductionResult red = reduce(s, m);
      double worst = 0.0;
      std::string why;
      const auto check = [&](double violation, double tol, const std::string& what) {
        worst = std::max(worst, violation);
        if (violation > tol && why.empty()) why = what + " off by " + fmt15(violation);
      };
      double previous = red.trace.initial_perimeter;
      for (const ReductionStep& step : red.trace.steps) {
        const std::string at = "step " + to_string(step.rule);
        check(std::max(step.perimeter_after - previous, 0.0), 1e-9, at + " perimeter increase");
        check(std::fabs(step.mu_after - mu), 1e-9, at + " measure");
        check(std::fabs(step.lambda_after - lambda), 1e-9, at + " asymmetry");
        previous = step.perimeter_after;
      }
      check(std::fabs(mu_measure(red.set, m) - mu), 1e-9, "final measure");
      check(std::fabs(asymmetry(red.set, m).lambda - lambda), 1e-9, "final asymmetry");
      const IntervalSet target = optimal_set(m, mu, lambda);
      check(std::min(endpoint_error(red.set, target), endpoint_error(red.set, reflect(target))),
            1e-8, "terminal endpoints " + to_literal(red.set) + " vs " + to_literal(target));
      observe(r, worst);
      if (!why.empty()) fail(r, worst, input + ": " + why);
    } catch (const ZeroAsymmetry&) {
      // A half-line is its own reduction.
    } catch (const Error& ex) {
      fail(r, kInf, input + ": " + ex.what());
    }
  }
  return r;
}

VerificationReport verify_continuity(const MeasureModel& m, double x, int depth) {
  VerificationReport r;
  r.suite = "continuity";
  if (!satisfies_H(m, 0.1)) {
    r.applicable = false;
    r.note = "hypothesis (H) fails: J(t)/t is not strictly decreasing near 0";
    return r;
  }
  double previous = kInf;
  std::ostringstream seq;
  seq.precision(6);
  for (int k = 1; k <= depth; ++k) {
    ++r.trials;
    const double y = K_inverse(m, x, std::ldexp(1.0, -k));
    seq << (k > 1 ? " " : "") << y;
    if (y > previous) {
      fail(r, y - previous,
           "K_inverse increases at k=" + std::to_string(k) + ": " + fmt15(previous) + " -> " +
               fmt15(y));
    }
    previous = y;
  }
  if (depth >= 30 && previous > 0.01) fail(r, previous - 0.01, "final value " + fmt15(previous));
  r.note = "K_inverse(" + fmt15(x) + ", 2^-k), k=1.." + std::to_string(depth) + ": " + seq.str();
  return r;
}

VerificationReport verify_exp_equivalence(const MeasureModel& m) {
  VerificationReport r;
  r.suite = "exp-equivalence";
  const double eps = 0.1;
  const int n = 50;

  // (H-bar): J(t) = c t on (0, eps].
  const double c = m.profile(eps) / eps;
  bool linear = true;
  double linear_dev = 0.0;
  for (int i = 1; i <= n; ++i) {
    const double t = eps * i / n;
    linear_dev = std::max(linear_dev, std::fabs(m.profile(t) - c * t));
  }
  linear = linear_dev <= 1e-10;

  // (Exp): f(x) = c' exp(c x) on (x_lo, tau], with c and c' fitted from the
  // two ends.
  const double tau = m.quantile(eps);
  const double x_lo = m.quantile(eps / 100.0);
  const double rate = std::log(m.density(tau) / m.density(x_lo)) / (tau - x_lo);
  const double scale = m.density(tau) * std::exp(-rate * tau);
  double exp_dev = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double x = x_lo + (tau - x_lo) * i / n;
    const double fx = m.density(x);
    exp_dev = std::max(exp_dev, std::fabs(fx - scale * std::exp(rate * x)) / fx);
  }
  const bool exponential = exp_dev <= 1e-8;

  r.trials = 2;
  std::ostringstream os;
  os << "linear profile: " << (linear ? "yes" : "no") << " (c=" << fmt15(c)
     << ", max dev " << fmt15(linear_dev) << "); exponential tail: "
     << (exponential ? "yes" : "no") << " (rate=" << fmt15(rate) << ", max rel dev "
     << fmt15(exp_dev) << ")";
  r.note = os.str();
  if (linear != exponential) fail(r, std::min(linear_dev, exp_dev), "equivalence broken: " + r.note);
  if (linear && exponential && std::fabs(rate - c) > 1e-6)
    fail(r, std::fabs(rate - c), "rates differ: " + r.note);
  return r;
}

}  // namespace lciso
