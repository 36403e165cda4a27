#pragma once

#include <string>
#include <utility>
#include <vector>

#include "lciso/measure.hpp"

namespace lciso {

/// Piecewise-linear profile through (t, J) knots. Knots are folded onto
/// [0, 1/2] by t -> min(t, 1 - t); (0, 0) is added unless a knot sits at 0,
/// and J is held constant after the last knot. With concave_hull the knots
/// are first replaced by their upper concave hull. Throws InvalidMeasure on
/// empty, negative or non-finite knots.
ProfileFunction piecewise_linear_profile(std::vector<std::pair<double, double>> knots,
                                         bool concave_hull);

/// Measure from JSON text:
///   {"kind": "gaussian" | "logistic" | "laplace" | "custom",
///    "params": {"scale": s, "rate": c, "fit": "linear" | "concave-hull"},
///    "custom_profile": [[t, J], ...],
///    "prob_tol": 1e-12, "quantile_eps": 1e-9}
/// Throws InvalidMeasure on malformed input.
MeasureModel parse_measure_config(const std::string& json_text);

MeasureModel load_measure_config(const std::string& path);

}  // namespace lciso
