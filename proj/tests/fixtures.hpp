#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

namespace fixtures {

inline const nlohmann::json& all() {
  static const nlohmann::json doc = [] {
    std::ifstream in(std::string(LCISO_FIXTURES) + "/regression_constants.json");
    return nlohmann::json::parse(in);
  }();
  return doc;
}

/// Value at a JSON pointer such as "/gaussian/K_0.25_0.1".
inline double value(const std::string& pointer) {
  return all().at(nlohmann::json::json_pointer(pointer)).get<double>();
}

inline std::string measure_path(const std::string& name) {
  return std::string(LCISO_MEASURES) + "/" + name;
}

}  // namespace fixtures
