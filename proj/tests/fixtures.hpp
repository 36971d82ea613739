#pragma once

#include <vector>

#include "eva/core.hpp"

namespace fixtures {

// Four-type catalog and four tasks used throughout the worked scheduling
// example (it1..it4 / tau1..tau4).
inline std::vector<eva::InstanceType> example_catalog() {
  return {
      {"it1", {4, 16, 244.0}, 12.0},
      {"it2", {1, 4, 61.0}, 3.0},
      {"it3", {0, 8, 32.0}, 0.8},
      {"it4", {0, 4, 16.0}, 0.4},
  };
}

inline std::vector<eva::Task> example_tasks() {
  return {
      {"tau1", "j1", "w1", {2, 8, 24.0}},
      {"tau2", "j2", "w2", {1, 4, 10.0}},
      {"tau3", "j3", "w3", {0, 6, 20.0}},
      {"tau4", "j4", "w4", {0, 4, 12.0}},
  };
}

}  // namespace fixtures
