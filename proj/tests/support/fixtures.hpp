#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gpw/groupoid.hpp"
#include "gpw/io.hpp"

namespace testing_support {

inline std::string fixture_path(const std::string& name) {
  return std::string(GPW_FIXTURE_DIR) + "/" + name;
}

inline gpw::GroupoidPtr load(const std::string& name) {
  return std::make_shared<const gpw::FiniteGroupoid>(gpw::load_groupoid(fixture_path(name)));
}

inline gpw::GroupoidPtr share(gpw::FiniteGroupoid g) {
  return std::make_shared<const gpw::FiniteGroupoid>(std::move(g));
}

// The acceptance fixture set.
inline const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names = {
      "pair2.gpd", "pair5.gpd",     "z2.gpd",        "z6.gpd",
      "z2action.gpd", "z3cycle_point.gpd", "pair3_z4.gpd",
  };
  return names;
}

}  // namespace testing_support
