#include "lciso/measure_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lciso/errors.hpp"

namespace lciso {

namespace {

using Knots = std::vector<std::pair<double, double>>;

double cross(const std::pair<double, double>& o, const std::pair<double, double>& a,
             const std::pair<double, double>& b) {
  return (a.first - o.first) * (b.second - o.second) - (a.second - o.second) * (b.first - o.first);
}

Knots upper_hull(const Knots& pts) {
  Knots hull;
  for (const auto& p : pts) {
    while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) >= 0.0) hull.pop_back();
    hull.push_back(p);
  }
  return hull;
}

double number_param(const nlohmann::json& params, const char* key, double fallback) {
  if (!params.contains(key)) return fallback;
  if (!params.at(key).is_number()) throw InvalidMeasure(std::string("params.") + key + " must be a number");
  return params.at(key).get<double>();
}

}  // namespace

ProfileFunction piecewise_linear_profile(Knots knots, bool concave_hull) {
  if (knots.empty()) throw InvalidMeasure("custom_profile needs at least one knot");
  for (auto& [t, j] : knots) {
    if (!std::isfinite(t) || !std::isfinite(j) || t < 0.0 || t > 1.0 || j < 0.0)
      throw InvalidMeasure("custom_profile knots need 0 <= t <= 1 and finite J >= 0");
    t = std::min(t, 1.0 - t);
  }
  std::sort(knots.begin(), knots.end());
  Knots folded;
  for (const auto& k : knots) {
    if (!folded.empty() && folded.back().first == k.first) {
      folded.back().second = std::max(folded.back().second, k.second);
    } else {
      folded.push_back(k);
    }
  }
  if (folded.front().first > 0.0) folded.insert(folded.begin(), {0.0, 0.0});
  if (folded.back().first < 0.5) folded.push_back({0.5, folded.back().second});
  if (concave_hull) folded = upper_hull(folded);
  return [pts = std::move(folded)](double t) {
    const double s = std::min(t, 1.0 - t);
    const auto it = std::lower_bound(pts.begin(), pts.end(), s,
                                     [](const std::pair<double, double>& k, double v) { return k.first < v; });
    if (it == pts.begin()) return it->second;
    if (it == pts.end()) return pts.back().second;
    const auto& [t1, j1] = *it;
    const auto& [t0, j0] = *(it - 1);
    return j0 + (j1 - j0) * (s - t0) / (t1 - t0);
  };
}

namespace {

MeasureModel build_measure(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("kind") || !doc.at("kind").is_string())
    throw InvalidMeasure("measure config needs a string field \"kind\"");
  const std::string kind = doc.at("kind").get<std::string>();
  const nlohmann::json params = doc.value("params", nlohmann::json::object());
  if (!params.is_object()) throw InvalidMeasure("params must be an object");

  MeasureOptions options;
  if (doc.contains("prob_tol")) options.prob_tol = doc.at("prob_tol").get<double>();
  if (doc.contains("quantile_eps")) options.quantile_eps = doc.at("quantile_eps").get<double>();
  if (!(options.prob_tol > 0.0) || !(options.quantile_eps > 0.0 && options.quantile_eps < 0.5))
    throw InvalidMeasure("prob_tol must be positive and quantile_eps in (0, 1/2)");

  if (kind == "gaussian") return MeasureModel::gaussian(options);
  if (kind == "logistic") return MeasureModel::logistic(number_param(params, "scale", 1.0), options);
  if (kind == "laplace") return MeasureModel::laplace(number_param(params, "rate", 1.0), options);
  if (kind == "custom") {
    if (!doc.contains("custom_profile") || !doc.at("custom_profile").is_array())
      throw InvalidMeasure("custom measure needs a \"custom_profile\" array of [t, J] knots");
    Knots knots;
    for (const auto& k : doc.at("custom_profile")) {
      if (!k.is_array() || k.size() != 2 || !k[0].is_number() || !k[1].is_number())
        throw InvalidMeasure("custom_profile entries must be [t, J] number pairs");
      knots.emplace_back(k[0].get<double>(), k[1].get<double>());
    }
    const std::string fit = params.value("fit", std::string("linear"));
    if (fit != "linear" && fit != "concave-hull")
      throw InvalidMeasure("params.fit must be \"linear\" or \"concave-hull\"");
    const std::string label = doc.value("name", std::string("custom"));
    std::vector<double> kinks;
    for (const auto& knot : knots) kinks.push_back(knot.first);
    return MeasureModel::custom(piecewise_linear_profile(std::move(knots), fit == "concave-hull"),
                                options, label, std::move(kinks));
  }
  throw InvalidMeasure("unknown measure kind \"" + kind + "\"");
}

}  // namespace

MeasureModel parse_measure_config(const std::string& json_text) {
  try {
    return build_measure(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& ex) {
    throw InvalidMeasure(std::string("malformed measure config: ") + ex.what());
  }
}

MeasureModel load_measure_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidMeasure("cannot read measure config " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_measure_config(buf.str());
}

}  // namespace lciso
