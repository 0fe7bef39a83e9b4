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

#ifndef SUBKNAP_EXPERIMENTS_HPP_
#define SUBKNAP_EXPERIMENTS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "subknap/generate.hpp"
#include "subknap/knapsack.hpp"

namespace subknap {

// knapsack | density | sviridenko | brute
inline constexpr std::string_view kAlgorithms[] = {"knapsack", "density", "sviridenko", "brute"};

struct RunRow {
  std::string instance;
  std::string algorithm;
  std::size_t n = 0;
  double eps = 0.0;
  std::vector<Element> set;
  double value = 0.0;
  double cost = 0.0;
  std::uint64_t queries = 0;
  double millis = 0.0;
  std::optional<double> ratio_opt;  // value / brute-force OPT
  std::optional<KnapsackResult> knapsack;  // knapsack runs only
};

// Runs one algorithm with a fresh counting oracle. The density baseline and
// the M estimate use lazy step min(eps, 0.1). InputError on unknown names.
RunRow run_algorithm(const Instance& instance, std::string_view algorithm,
                     const KnapsackParams& params);

// "instance,algorithm,n,epsilon,value,cost,queries,millis,ratio_opt"
std::string_view csv_header();
std::string csv_row(const RunRow& row);

struct ScalingRow {
  std::size_t n = 0;
  std::string algorithm;  // lazy_greedy | knapsack_phase
  std::uint64_t queries = 0;
  double normalized = 0.0;  // queries / (n ln(n / eps))
};

struct ScalingReport {
  std::vector<ScalingRow> rows;
  double lazy_spread = 0.0;   // max / min of normalized, lazy_greedy rows
  double phase_spread = 0.0;  // same for knapsack_phase rows
  bool lazy_increasing = true;  // queries strictly increase with n
};

// For each n, a random instance of the family: unconstrained lazy density
// greedy from 0 over every element, and one single-phase knapsack_guess run
// (t = r = P = 1, thresholds v = 0, W = M, w at the top of its grid).
ScalingReport run_scaling(Family family, std::span<const std::size_t> ns, double eps,
                          std::uint64_t seed);

}  // namespace subknap

#endif  // SUBKNAP_EXPERIMENTS_HPP_
