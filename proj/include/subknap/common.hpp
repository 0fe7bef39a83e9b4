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

#ifndef SUBKNAP_COMMON_HPP_
#define SUBKNAP_COMMON_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace subknap {

// Dense element id in [0, n).
using Element = std::uint32_t;

// Malformed input: bad ids, costs out of range, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A request that would exceed a configured size limit (fractional support,
// brute-force n, guess enumeration). Never silently degraded.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kRelTol = 1e-9;
inline constexpr double kSnapTol = 1e-12;

// Budget is 1 after normalization; a set is feasible when its cost is at
// most 1 + kFeasTol.
inline constexpr double kFeasTol = 1e-9;
inline bool within_budget(double cost) { return cost <= 1.0 + kFeasTol; }

// a >= b up to the relative threshold tolerance.
inline bool at_least(double a, double b) {
  return a >= b - kRelTol * std::max(1.0, std::abs(b));
}

}  // namespace subknap

#endif  // SUBKNAP_COMMON_HPP_
