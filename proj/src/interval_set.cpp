#include "lciso/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "lciso/errors.hpp"

namespace lciso {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<double> breakpoints(const IntervalSet& a, const IntervalSet& b) {
  std::vector<double> pts;
  pts.reserve(2 * (a.size() + b.size()));
  for (const IntervalSet* s : {&a, &b}) {
    for (const Interval& iv : s->intervals()) {
      if (std::isfinite(iv.lo)) pts.push_back(iv.lo);
      if (std::isfinite(iv.hi)) pts.push_back(iv.hi);
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

// Boolean combination by sweeping the elementary segments between consecutive
// breakpoints. Each segment lies entirely inside or outside each operand.
template <class Op>
IntervalSet combine(const IntervalSet& a, const IntervalSet& b, Op op) {
  const std::vector<double> pts = breakpoints(a, b);
  std::vector<Interval> out;
  double left = -kInf;
  for (std::size_t i = 0; i <= pts.size(); ++i) {
    const double right = i < pts.size() ? pts[i] : kInf;
    if (op(a.contains(left, right), b.contains(left, right))) {
      if (!out.empty() && out.back().hi == left) {
        out.back().hi = right;
      } else {
        out.push_back({left, right});
      }
    }
    left = right;
  }
  return IntervalSet::normalize(std::move(out));
}

}  // namespace

IntervalSet IntervalSet::normalize(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    if (std::isnan(iv.lo) || std::isnan(iv.hi))
      throw InvalidInterval("interval endpoint is NaN");
    if (iv.lo > iv.hi) {
      std::ostringstream os;
      os.precision(17);
      os << "invalid interval (" << iv.lo << "," << iv.hi << "): lo > hi";
      throw InvalidInterval(os.str());
    }
  }
  std::erase_if(raw, [](const Interval& iv) { return !(iv.lo < iv.hi); });
  std::sort(raw.begin(), raw.end(),
            [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  IntervalSet s;
  for (const Interval& iv : raw) {
    if (!s.intervals_.empty() && iv.lo <= s.intervals_.back().hi) {
      s.intervals_.back().hi = std::max(s.intervals_.back().hi, iv.hi);
    } else {
      s.intervals_.push_back(iv);
    }
  }
  return s;
}

IntervalSet IntervalSet::left_half_line(double x) { return normalize({{-kInf, x}}); }
IntervalSet IntervalSet::right_half_line(double x) { return normalize({{x, kInf}}); }
IntervalSet IntervalSet::whole_line() { return normalize({{-kInf, kInf}}); }

bool IntervalSet::contains(double lo, double hi) const {
  const auto it = std::lower_bound(intervals_.begin(), intervals_.end(), hi,
                                   [](const Interval& iv, double v) { return iv.hi < v; });
  return it != intervals_.end() && it->lo <= lo;
}

MassPair mass_pair(const IntervalSet& s, const MeasureModel& m) {
  if (s.empty()) return {0.0, 1.0};
  double alternating = 0.0;
  double sign = 1.0;
  for (const Interval& iv : s.intervals()) {
    for (double e : {iv.lo, iv.hi}) {
      if (!std::isfinite(e)) continue;
      alternating += sign * m.cdf(e);
      sign = -sign;
    }
  }
  const bool starts_at_minus_inf = s.intervals().front().lo == -kInf;
  const bool ends_at_plus_inf = s.intervals().back().hi == kInf;
  const double oriented = starts_at_minus_inf ? alternating : -alternating;
  const double base = ends_at_plus_inf ? 1.0 : 0.0;
  MassPair pair;
  pair.inside = std::clamp(oriented + base, 0.0, 1.0);
  pair.outside = std::clamp(-oriented + (1.0 - base), 0.0, 1.0);
  // Avoid a signed zero leaking into printed output.
  pair.inside += 0.0;
  pair.outside += 0.0;
  return pair;
}

double mu_measure(const IntervalSet& s, const MeasureModel& m) {
  return mass_pair(s, m).inside;
}

double m_value(const IntervalSet& s, const MeasureModel& m) {
  const MassPair p = mass_pair(s, m);
  return std::min(p.inside, p.outside);
}

double perimeter(const IntervalSet& s, const MeasureModel& m) {
  double total = 0.0;
  for (const Interval& iv : s.intervals()) {
    if (std::isfinite(iv.lo)) total += m.density(iv.lo);
    if (std::isfinite(iv.hi)) total += m.density(iv.hi);
  }
  return total;
}

IntervalSet complement(const IntervalSet& s) {
  std::vector<Interval> out;
  double left = -kInf;
  for (const Interval& iv : s.intervals()) {
    if (left < iv.lo) out.push_back({left, iv.lo});
    left = iv.hi;
  }
  if (left < kInf) out.push_back({left, kInf});
  return IntervalSet::normalize(std::move(out));
}

IntervalSet symmetric_difference(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x != y; });
}

IntervalSet set_union(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}

IntervalSet set_intersection(const IntervalSet& a, const IntervalSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}

IntervalSet reflect(const IntervalSet& s) {
  std::vector<Interval> out;
  out.reserve(s.size());
  for (const Interval& iv : s.intervals()) out.push_back({-iv.hi, -iv.lo});
  return IntervalSet::normalize(std::move(out));
}

std::string to_string(Projection p) {
  return p == Projection::LeftHalfLine ? "LeftHalfLine" : "RightHalfLine";
}

AsymmetryReport asymmetry(const IntervalSet& s, const MeasureModel& m) {
  const MassPair pair = mass_pair(s, m);
  if (pair.inside <= m.prob_tol() || pair.outside <= m.prob_tol()) {
    std::ostringstream os;
    os.precision(17);
    os << "asymmetry undefined for a set of measure " << pair.inside;
    throw DegenerateMeasure(os.str());
  }
  AsymmetryReport r;
  r.sigma_minus = m.quantile(pair.inside);
  r.sigma_plus = m.quantile(pair.outside);
  r.left_value = mu_measure(symmetric_difference(s, IntervalSet::left_half_line(r.sigma_minus)), m);
  r.right_value =
      mu_measure(symmetric_difference(s, IntervalSet::right_half_line(r.sigma_plus)), m);
  r.lambda = std::min(r.left_value, r.right_value);
  r.projection = (r.left_value <= r.right_value + m.prob_tol()) ? Projection::LeftHalfLine
                                                                : Projection::RightHalfLine;
  return r;
}

namespace {

void append_number(std::ostringstream& os, double v) {
  if (v == kInf) {
    os << "inf";
  } else if (v == -kInf) {
    os << "-inf";
  } else {
    os << v;
  }
}

class LiteralParser {
 public:
  explicit LiteralParser(std::string_view text) : text_(text) {}

  std::vector<Interval> parse() {
    std::vector<Interval> out;
    skip_space();
    if (consume("{}") || consume("empty")) {
      expect_end();
      return out;
    }
    for (;;) {
      expect('(');
      const double lo = number();
      expect(',');
      const double hi = number();
      expect(')');
      if (!(lo < hi)) {
        std::ostringstream os;
        os.precision(17);
        os << "invalid interval (" << lo << "," << hi << "): need lo < hi";
        throw InvalidInterval(os.str());
      }
      out.push_back({lo, hi});
      skip_space();
      if (pos_ == text_.size()) break;
      if (!consume("u") && !consume("U")) fail("expected 'u' between intervals");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidInterval("set literal: " + what + " at offset " + std::to_string(pos_) +
                          " in \"" + std::string(text_) + "\"");
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(std::string_view token) {
    skip_space();
    if (text_.substr(pos_, token.size()) == token) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!consume(std::string_view(&c, 1))) fail(std::string("expected '") + c + "'");
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters");
  }

  double number() {
    skip_space();
    double sign = 1.0;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      if (text_[pos_] == '-') sign = -1.0;
      ++pos_;
    }
    if (consume("inf")) return sign * kInf;
    const double numerator = decimal();
    if (consume("/")) {
      const double denominator = decimal();
      if (denominator == 0.0) fail("zero denominator");
      return sign * numerator / denominator;
    }
    return sign * numerator;
  }

  double decimal() {
    skip_space();
    const std::size_t start = pos_;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      const bool exponent_sign =
          (c == '-' || c == '+') && pos_ > start && (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E');
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == 'e' || c == 'E' ||
          exponent_sign) {
        ++pos_;
      } else {
        break;
      }
    }
    if (start == pos_) fail("expected a number");
    const std::string token(text_.substr(start, pos_ - start));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      fail("malformed number '" + token + "'");
    }
    if (used != token.size()) fail("malformed number '" + token + "'");
    return v;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_literal(const IntervalSet& s) {
  if (s.empty()) return "{}";
  std::ostringstream os;
  os.precision(17);
  bool first = true;
  for (const Interval& iv : s.intervals()) {
    if (!first) os << "u";
    first = false;
    os << "(";
    append_number(os, iv.lo);
    os << ",";
    append_number(os, iv.hi);
    os << ")";
  }
  return os.str();
}

std::vector<Interval> parse_set_literal(std::string_view text) {
  return LiteralParser(text).parse();
}

}  // namespace lciso
