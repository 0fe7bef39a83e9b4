// Copyright 2026 The subknap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SUBKNAP_TESTS_TEST_HELPERS_HPP_
#define SUBKNAP_TESTS_TEST_HELPERS_HPP_

#include <cmath>
#include <vector>

#include "subknap/objective.hpp"
#include "subknap/oracle.hpp"

namespace subknap::testing {

// Coverage over universe {1,2,3} (index 0 unused, weight 0): a -> {1,2}, b -> {2,3}.
inline Objective two_set_coverage() {
  WeightedCoverage f;
  f.universe_weights = {0.0, 1.0, 1.0, 1.0};
  f.covers = {{1, 2}, {2, 3}};
  return Objective(std::move(f));
}

// Modular function with the given per-element values (a_j = 1, w = v^2).
inline Objective modular(const std::vector<double>& values) {
  ConcaveModular f;
  f.n = values.size();
  for (std::size_t e = 0; e < values.size(); ++e) {
    f.groups.push_back({values[e], {{static_cast<Element>(e), 1.0}}});
  }
  return Objective(std::move(f));
}

inline bool close(double a, double b, double rel = 1e-9) {
  return std::abs(a - b) <= rel * std::max(1.0, std::max(std::abs(a), std::abs(b)));
}

}  // namespace subknap::testing

#endif  // SUBKNAP_TESTS_TEST_HELPERS_HPP_
