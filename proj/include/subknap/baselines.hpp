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

#ifndef SUBKNAP_BASELINES_HPP_
#define SUBKNAP_BASELINES_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "subknap/oracle.hpp"

namespace subknap {

struct BaselineResult {
  std::string algorithm;
  std::vector<Element> set;  // sorted
  double value = 0.0;
  double cost = 0.0;
  std::uint64_t queries = 0;
};

inline constexpr std::size_t kBruteForceMaxN = 24;
inline constexpr std::size_t kSviridenkoMaxN = 120;

// Exact optimum by depth-first search with cost pruning and the bound
// f(S + every remaining element that still fits). Ties go to the
// lexicographically smallest set. CapacityError for n > 24.
BaselineResult brute_force_opt(const CountingOracle& oracle, const Instance& instance);

// Lazy density greedy from the empty set that skips whatever no longer fits,
// compared with the best single element.
BaselineResult density_greedy_baseline(const CountingOracle& oracle, const Instance& instance,
                                       double eps);

// Every seed of at most three elements, each completed by exact density
// greedy under the remaining budget. CapacityError above `max_n`.
BaselineResult sviridenko(const CountingOracle& oracle, const Instance& instance,
                          std::size_t max_n = kSviridenkoMaxN);

// Exact density greedy from `seed` (ties to the lowest id); elements that do
// not fit are skipped. Returns the completed set in selection order.
std::vector<Element> greedy_complete(const CountingOracle& oracle, std::span<const double> costs,
                                     std::span<const Element> seed);

}  // namespace subknap

#endif  // SUBKNAP_BASELINES_HPP_
