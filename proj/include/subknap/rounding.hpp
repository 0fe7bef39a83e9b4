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

#ifndef SUBKNAP_ROUNDING_HPP_
#define SUBKNAP_ROUNDING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subknap/multilinear.hpp"
#include "subknap/rng.hpp"

namespace subknap {

enum class RoundingCase {
  kMerge = 1,     // pair sums to at most 1: mass moves onto one element
  kSplit = 2,     // pair sums above 1: one element goes to 1
  kLoneEntry = 3  // last fractional entry is rounded up
};

struct RoundingStep {
  Element high;  // higher-cost entry of the pair
  std::optional<Element> low;
  RoundingCase kind;
  double prob_up = 1.0;  // probability that the branch u = 1 is taken
  double draw = 0.0;
  bool up = true;
  double high_before = 0.0;
  double low_before = 0.0;
  double high_after = 0.0;
  double low_after = 0.0;
};

struct RoundingTranscript {
  std::optional<std::uint64_t> seed;
  std::vector<RoundingStep> steps;
  std::vector<Element> rounded_up;  // fractional entries that reached 1
  std::vector<Element> final_set;   // sorted
};

// Randomized pairwise rounding of the fractional entries, highest costs
// first. The integral part of x is kept. Each step preserves the pair's mean.
RoundingTranscript round_point(const SparseFractionalPoint& x, std::span<const double> costs,
                               CounterRng& rng);
RoundingTranscript round_point(const SparseFractionalPoint& x, std::span<const double> costs,
                               std::uint64_t seed);

struct GroupingCheck {
  bool ok = true;
  double mass = 0.0;  // sum of fractional values
  std::optional<Element> element;
  std::optional<std::size_t> group;  // 1-based
  std::string reason;
};

// Lays the fractional entries, most expensive first, along [0, mass) and
// cuts the line into unit groups. Passes when mass <= |O| and every element
// of group i costs at most the i-th most expensive entry of `reference`.
GroupingCheck check_grouping_invariant(const SparseFractionalPoint& x, std::span<const double> costs,
                                       std::vector<double> reference);

}  // namespace subknap

#endif  // SUBKNAP_ROUNDING_HPP_
