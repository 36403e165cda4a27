#include "lciso/reducer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "lciso/deficit.hpp"

namespace lciso {

namespace {

using QSet = std::vector<QInterval>;
using Recorder = std::function<void(Rule, const QSet&)>;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCenterTol = 1e-12;
// Reflection t -> 1 - t is not exact in floating point; endpoints within a few
// ulps of a or b count as touching them.
constexpr double kEdgeTol = 8 * std::numeric_limits<double>::epsilon();

QSet normalize_q(QSet v) {
  for (QInterval& iv : v) {
    iv.lo = std::clamp(iv.lo, 0.0, 1.0);
    iv.hi = std::clamp(iv.hi, 0.0, 1.0);
  }
  std::erase_if(v, [](const QInterval& iv) { return !(iv.lo < iv.hi); });
  std::sort(v.begin(), v.end(), [](const QInterval& x, const QInterval& y) { return x.lo < y.lo; });
  QSet out;
  for (const QInterval& iv : v) {
    if (!out.empty() && iv.lo <= out.back().hi) {
      out.back().hi = std::max(out.back().hi, iv.hi);
    } else {
      out.push_back(iv);
    }
  }
  return out;
}

QSet add_q(QSet s, QInterval iv) {
  s.push_back(iv);
  return normalize_q(std::move(s));
}

QSet remove_q(const QSet& s, QInterval cut) {
  QSet out;
  for (const QInterval& iv : s) {
    out.push_back({iv.lo, std::min(iv.hi, cut.lo)});
    out.push_back({std::max(iv.lo, cut.hi), iv.hi});
  }
  return normalize_q(std::move(out));
}

QSet reflect_q(const QSet& s) {
  QSet out;
  for (const QInterval& iv : s) out.push_back({1.0 - iv.hi, 1.0 - iv.lo});
  return normalize_q(std::move(out));
}

QSet complement_q(const QSet& s) {
  QSet out;
  double left = 0.0;
  for (const QInterval& iv : s) {
    out.push_back({left, iv.lo});
    left = iv.hi;
  }
  out.push_back({left, 1.0});
  return normalize_q(std::move(out));
}

double mass_q(const QSet& s) {
  double total = 0.0;
  for (const QInterval& iv : s) total += iv.mass();
  return total;
}

double mass_below(const QSet& s, double a) {
  double total = 0.0;
  for (const QInterval& iv : s) total += std::max(0.0, std::min(iv.hi, a) - iv.lo);
  return total;
}

double mass_above(const QSet& s, double b) {
  double total = 0.0;
  for (const QInterval& iv : s) total += std::max(0.0, iv.hi - std::max(iv.lo, b));
  return total;
}

double perimeter_q(const QSet& s, const MeasureModel& m) {
  double total = 0.0;
  for (const QInterval& iv : s) total += m.profile(iv.lo) + m.profile(iv.hi);
  return total;
}

// Asymmetry in quantile coordinates, with a = mu and b = 1 - mu fixed by the
// caller so that it stays constant along a reduction.
double lambda_q(const QSet& s, double mu) {
  return 2.0 * std::min(mu - mass_below(s, mu), mu - mass_above(s, 1.0 - mu));
}

double real_endpoint(double t, const MeasureModel& m) {
  if (t <= 0.0) return -kInf;
  if (t >= 1.0) return kInf;
  return m.quantile(t);
}

StructuralDecomposition classify(const QSet& q, double a, double b) {
  StructuralDecomposition d;
  d.a = a;
  d.b = b;
  for (const QInterval& iv : q) {
    if (iv.hi <= a + kEdgeTol) {
      d.left_tail_parts.push_back(iv);
    } else if (iv.lo >= b - kEdgeTol) {
      d.right_tail_parts.push_back(iv);
    } else if (iv.lo <= a + kEdgeTol) {
      d.straddle_left = iv;
    } else if (iv.hi >= b - kEdgeTol) {
      d.straddle_right = iv;
    } else if (iv.lo + iv.hi < 1.0) {
      d.inner_left.push_back(iv);
    } else {
      d.inner_right.push_back(iv);
    }
  }
  return d;
}

void emit(const Recorder& rec, Rule rule, const QSet& q) {
  if (rec) rec(rule, q);
}

QSet move_hole(const QSet& q, QInterval from, QInterval to) {
  return remove_q(add_q(q, from), to);
}

QSet move_interval(const QSet& q, QInterval from, QInterval to) {
  return add_q(remove_q(q, from), to);
}

QSet collapse_left(QSet q, double a, double b, const Recorder& rec) {
  const StructuralDecomposition d = classify(q, a, b);
  if (d.left_tail_parts.empty()) return q;
  if (d.left_tail_parts.size() == 1 && d.left_tail_parts.front().lo == 0.0) return q;
  double w = 0.0;
  for (const QInterval& iv : d.left_tail_parts) {
    w += iv.mass();
    q = remove_q(q, iv);
  }
  q = add_q(std::move(q), {0.0, w});
  emit(rec, Rule::CollapseLeftTail, q);
  return q;
}

QSet collapse_right(QSet q, double a, double b, const Recorder& rec) {
  const StructuralDecomposition d = classify(q, a, b);
  if (d.right_tail_parts.empty()) return q;
  if (d.right_tail_parts.size() == 1 && d.right_tail_parts.front().hi == 1.0) return q;
  double w = 0.0;
  for (const QInterval& iv : d.right_tail_parts) {
    w += iv.mass();
    q = remove_q(q, iv);
  }
  q = add_q(std::move(q), {1.0 - w, 1.0});
  emit(rec, Rule::CollapseRightTail, q);
  return q;
}

QSet shift_inner_q(QSet q, double a, double b, const Recorder& rec) {
  const StructuralDecomposition d = classify(q, a, b);
  double cursor = d.straddle_left ? d.straddle_left->hi : a;
  for (const QInterval& iv : d.inner_left) {
    const double next = cursor + iv.mass();
    q = move_interval(q, iv, {cursor, next});
    cursor = next;
    emit(rec, Rule::ShiftInnerLeft, q);
  }
  cursor = d.straddle_right ? d.straddle_right->lo : b;
  for (auto it = d.inner_right.rbegin(); it != d.inner_right.rend(); ++it) {
    const double next = cursor - it->mass();
    q = move_interval(q, *it, {next, cursor});
    cursor = next;
    emit(rec, Rule::ShiftInnerRight, q);
  }
  return q;
}

[[noreturn]] void center_failure(const char* what, double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "reducer: " << what << " (" << lo << ", " << hi << ") has center of mass "
     << (lo + hi - 1.0) << " in quantile units, expected >= 0";
  throw PostconditionFailed(os.str());
}

// Carries a set through complement/reflection normalization, the structural
// steps and the case analysis, reporting every change to an optional recorder.
class Engine {
 public:
  Engine(const MeasureModel& m, ReductionTrace* trace) : m_(m), trace_(trace) {}

  void start(const IntervalSet& s) {
    const AsymmetryReport asym = asymmetry(s, m_);
    input_mu_ = mu_measure(s, m_);
    input_lambda_ = asym.lambda;
    if (asym.lambda <= m_.prob_tol()) {
      const IntervalSet half = asym.projection == Projection::LeftHalfLine
                                   ? IntervalSet::left_half_line(asym.sigma_minus)
                                   : IntervalSet::right_half_line(asym.sigma_plus);
      throw ZeroAsymmetry("asymmetry is zero; the set already matches " + to_literal(half),
                          half);
    }
    if (trace_) {
      trace_->initial_set = s;
      trace_->initial_perimeter = perimeter(s, m_);
      trace_->initial_lambda = asym.lambda;
      trace_->initial_mu = input_mu_;
    }
    q_ = to_quantile(s, m_);
    mu_ = mass_q(q_);
    if (mu_ > 0.5) {
      q_ = complement_q(q_);
      mu_ = mass_q(q_);
      complemented_ = true;
      record(Rule::Complement);
    }
    mu_ = std::min(mu_, 0.5);
    a_ = mu_;
    b_ = 1.0 - mu_;
    if (mass_above(q_, b_) > mass_below(q_, a_) + 0.5 * m_.prob_tol()) reflect();
  }

  void structure() {
    const Recorder rec = recorder();
    q_ = collapse_left(q_, a_, b_, rec);
    q_ = collapse_right(q_, a_, b_, rec);
    q_ = shift_inner_q(q_, a_, b_, rec);
  }

  ReductionCase resolve() {
    std::optional<ReductionCase> first;
    for (int round = 0; round < 8; ++round) {
      const StructuralDecomposition d = classify(q_, a_, b_);
      const ReductionCase kase = d.straddle_left && d.straddle_right ? ReductionCase::BothNonempty
                                 : d.straddle_left                   ? ReductionCase::IOnly
                                 : d.straddle_right                  ? ReductionCase::JOnly
                                                                     : ReductionCase::BothEmpty;
      if (!first) first = kase;
      switch (kase) {
        case ReductionCase::BothNonempty:
          both_nonempty(d);
          break;
        case ReductionCase::IOnly:
          i_only(d);
          return *first;
        case ReductionCase::JOnly:
          if (j_only(d)) return *first;
          break;
        case ReductionCase::BothEmpty:
          return *first;
      }
    }
    throw PostconditionFailed("reducer: case analysis did not terminate");
  }

  // Replaces a Domain-2 Omega_c by Omega_d, then undoes reflection and
  // complement.
  IntervalSet finalize(bool switch_to_optimal) {
    if (switch_to_optimal && q_.size() == 1 && q_.front().lo > 0.0 && q_.front().hi < 1.0) {
      const Domain dom = classify_domain(input_mu_, input_lambda_).id;
      if (dom == Domain::D2 || dom == Domain::D3) {
        const double left = mass_below(q_, a_);
        q_ = normalize_q({{0.0, left}, {1.0 - (mu_ - left), 1.0}});
      }
    }
    if (reflected_) q_ = reflect_q(q_);
    if (complemented_) q_ = complement_q(q_);
    reflected_ = false;
    complemented_ = false;
    if (switch_to_optimal) record(Rule::Finalize);
    return from_quantile(q_, m_);
  }

 private:
  Recorder recorder() {
    if (!trace_) return {};
    return [this](Rule rule, const QSet& q) {
      q_ = q;
      record(rule);
    };
  }

  void record(Rule rule) {
    if (!trace_) return;
    ReductionStep step;
    step.rule = rule;
    step.quantiles_after = q_;
    for (const QInterval& iv : q_)
      step.endpoints_after.push_back({real_endpoint(iv.lo, m_), real_endpoint(iv.hi, m_)});
    step.set_after = from_quantile(q_, m_);
    step.perimeter_after = perimeter_q(q_, m_);
    step.lambda_after = lambda_q(q_, mass_q(q_));
    const double mass = mass_q(q_);
    step.mu_after = complemented_ ? 1.0 - mass : mass;
    step.complemented = complemented_;
    step.reflected = reflected_;
    trace_->steps.push_back(std::move(step));
  }

  void reflect() {
    q_ = reflect_q(q_);
    reflected_ = !reflected_;
    record(Rule::Reflect);
  }

  void shift_hole_to_touch_b(const StructuralDecomposition& d) {
    const double x = d.straddle_left->hi;
    const double y = d.straddle_right->lo;
    if (x + y < 1.0 - kCenterTol) center_failure("hole between I0 and J0", x, y);
    q_ = move_hole(q_, {x, y}, {b_ - (y - x), b_});
    record(Rule::ShiftHoleRight);
    q_ = collapse_right(q_, a_, b_, recorder());
  }

  void both_nonempty(const StructuralDecomposition& d) {
    const double x = d.straddle_left->hi;
    const double y = d.straddle_right->lo;
    if (x + y >= 1.0) {
      shift_hole_to_touch_b(d);
      return;
    }
    reflect();
    shift_hole_to_touch_b(classify(q_, a_, b_));
    reflect();
  }

  void i_only(const StructuralDecomposition& d) {
    QInterval core = *d.straddle_left;
    if (!d.left_tail_parts.empty()) {
      const QInterval tail = d.left_tail_parts.front();
      if (tail.hi + core.lo > 1.0 + kCenterTol) center_failure("hole between A0 and I0", tail.hi, core.lo);
      q_ = move_hole(q_, {tail.hi, core.lo}, {0.0, core.lo - tail.hi});
      record(Rule::ShiftHoleToInfinity);
      core.lo -= tail.mass();
    }
    if (!d.right_tail_parts.empty()) {
      const QInterval tail = d.right_tail_parts.front();
      if (core.hi + tail.lo < 1.0 - kCenterTol) center_failure("hole between I0 and B0", core.hi, tail.lo);
      q_ = move_hole(q_, {core.hi, tail.lo}, {1.0 - (tail.lo - core.hi), 1.0});
      record(Rule::ShiftHoleToInfinity);
    }
  }

  // Returns true when the set reached Omega_d.
  bool j_only(const StructuralDecomposition& d) {
    QInterval j = *d.straddle_right;
    if (!d.right_tail_parts.empty()) {
      const QInterval tail = d.right_tail_parts.front();
      if (j.hi + tail.lo < 1.0 - kCenterTol) center_failure("hole between J0 and B0", j.hi, tail.lo);
      q_ = move_hole(q_, {j.hi, tail.lo}, {1.0 - (tail.lo - j.hi), 1.0});
      record(Rule::ShiftHoleToInfinity);
      j.hi += tail.mass();
    }
    if (j.lo + j.hi <= 1.0) center_failure("interval J'", j.lo, j.hi);
    const double left = mass_below(q_, a_);
    if (j.mass() > left) {
      const double new_lo = b_ + left - j.mass();
      if (new_lo != j.lo) {
        q_ = move_interval(q_, j, {new_lo, b_ + left});
        record(Rule::ShiftInnerRight);
      }
      reflect();
      return false;
    }
    if (j.hi < 1.0) {
      q_ = move_interval(q_, j, {1.0 - j.mass(), 1.0});
      record(Rule::ShiftInnerRight);
    }
    return true;
  }

  const MeasureModel& m_;
  ReductionTrace* trace_;
  QSet q_;
  double input_mu_ = 0.0;
  double input_lambda_ = 0.0;
  double mu_ = 0.0;
  double a_ = 0.0;
  double b_ = 1.0;
  bool complemented_ = false;
  bool reflected_ = false;
};

StructuralDecomposition with_sigma(StructuralDecomposition d, const MeasureModel& m) {
  d.sigma = -m.quantile(d.a);
  return d;
}

}  // namespace

std::vector<QInterval> to_quantile(const IntervalSet& s, const MeasureModel& m) {
  QSet out;
  for (const Interval& iv : s.intervals()) out.push_back({m.cdf(iv.lo), m.cdf(iv.hi)});
  return normalize_q(std::move(out));
}

IntervalSet from_quantile(const std::vector<QInterval>& q, const MeasureModel& m) {
  std::vector<Interval> out;
  for (const QInterval& iv : q) out.push_back({real_endpoint(iv.lo, m), real_endpoint(iv.hi, m)});
  return normalize(std::move(out));
}

std::vector<QInterval> StructuralDecomposition::pieces() const {
  QSet all = left_tail_parts;
  if (straddle_left) all.push_back(*straddle_left);
  all.insert(all.end(), inner_left.begin(), inner_left.end());
  all.insert(all.end(), inner_right.begin(), inner_right.end());
  if (straddle_right) all.push_back(*straddle_right);
  all.insert(all.end(), right_tail_parts.begin(), right_tail_parts.end());
  return normalize_q(std::move(all));
}

IntervalSet StructuralDecomposition::assemble(const MeasureModel& m) const {
  return from_quantile(pieces(), m);
}

StructuralDecomposition decompose(const IntervalSet& s, const MeasureModel& m) {
  const QSet q = to_quantile(s, m);
  const double mu = mass_q(q);
  if (mu <= m.prob_tol()) throw DegenerateMeasure("decompose: set has measure zero");
  if (mu > 0.5 + m.prob_tol()) throw OutOfDomain("decompose: needs mu <= 1/2, complement first");
  const double a = std::min(mu, 0.5);
  if (mass_above(q, 1.0 - a) > mass_below(q, a) + 0.5 * m.prob_tol())
    throw OutOfDomain("decompose: projection is RightHalfLine, reflect first");
  return with_sigma(classify(q, a, 1.0 - a), m);
}

StructuralDecomposition collapse_tails(const StructuralDecomposition& d, const MeasureModel& m) {
  QSet q = collapse_left(d.pieces(), d.a, d.b, {});
  q = collapse_right(std::move(q), d.a, d.b, {});
  return with_sigma(classify(q, d.a, d.b), m);
}

StructuralDecomposition shift_inner(const StructuralDecomposition& d, const MeasureModel& m) {
  return with_sigma(classify(shift_inner_q(d.pieces(), d.a, d.b, {}), d.a, d.b), m);
}

std::string to_string(ReductionCase c) {
  switch (c) {
    case ReductionCase::BothNonempty:
      return "BothNonempty";
    case ReductionCase::IOnly:
      return "IOnly";
    case ReductionCase::JOnly:
      return "JOnly";
    case ReductionCase::BothEmpty:
      return "BothEmpty";
  }
  return "?";
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::CollapseLeftTail:
      return "CollapseLeftTail";
    case Rule::CollapseRightTail:
      return "CollapseRightTail";
    case Rule::ShiftInnerLeft:
      return "ShiftInnerLeft";
    case Rule::ShiftInnerRight:
      return "ShiftInnerRight";
    case Rule::ShiftHoleRight:
      return "ShiftHoleRight";
    case Rule::ShiftHoleToInfinity:
      return "ShiftHoleToInfinity";
    case Rule::Reflect:
      return "Reflect";
    case Rule::Complement:
      return "Complement";
    case Rule::Finalize:
      return "Finalize";
  }
  return "?";
}

CaseResult resolve_cases(const IntervalSet& omega0, const MeasureModel& m) {
  Engine engine(m, nullptr);
  engine.start(omega0);
  engine.structure();
  CaseResult r;
  r.kase = engine.resolve();
  r.set = engine.finalize(false);
  return r;
}

ReductionResult reduce(const IntervalSet& s, const MeasureModel& m) {
  ReductionResult r;
  Engine engine(m, &r.trace);
  engine.start(s);
  engine.structure();
  r.kase = engine.resolve();
  r.set = engine.finalize(true);
  return r;
}

namespace {

nlohmann::json number(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string trace_to_jsonl(const ReductionTrace& trace) {
  std::string out;
  int index = 0;
  for (const ReductionStep& step : trace.steps) {
    nlohmann::json j;
    j["step"] = ++index;
    j["rule"] = to_string(step.rule);
    j["set"] = to_literal(step.set_after);
    nlohmann::json intervals = nlohmann::json::array();
    for (std::size_t i = 0; i < step.quantiles_after.size(); ++i) {
      const QInterval& q = step.quantiles_after[i];
      const Interval& x = step.endpoints_after[i];
      intervals.push_back(
          {{"q_lo", q.lo}, {"q_hi", q.hi}, {"lo", number(x.lo)}, {"hi", number(x.hi)}});
    }
    j["intervals"] = intervals;
    j["perimeter"] = step.perimeter_after;
    j["lambda"] = step.lambda_after;
    j["mu"] = step.mu_after;
    j["complemented"] = step.complemented;
    j["reflected"] = step.reflected;
    out += j.dump() + "\n";
  }
  return out;
}

}  // namespace lciso
