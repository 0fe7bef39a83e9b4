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

#ifndef SUBKNAP_LAZY_GREEDY_HPP_
#define SUBKNAP_LAZY_GREEDY_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "subknap/multilinear.hpp"

namespace subknap {

// floor(2 ln(n / eps) / eps): how many times an entry may be found stale
// before it is dropped for good.
std::uint64_t lazy_update_cap(std::size_t n, double eps);

enum class LazyDecision {
  kAccepted,
  kReinserted,
  kDiscarded,     // stale too often
  kDroppedZero,   // fresh gain is zero
  kSkippedBudget  // does not fit in what is left of the budget
};

struct LazyStep {
  Element element;
  double cached_gain;
  double fresh_gain;
  std::uint64_t update_count;
  LazyDecision decision;
  // Accepted steps with shadow checking only: fresh density of the accepted
  // element over the best fresh density in the queue at that moment.
  double shadow_ratio = std::numeric_limits<double>::quiet_NaN();
};

struct DiscardRecord {
  Element element;
  double initial_gain;  // F(x v 1_e) - F(x)
  // With shadow checking: F(x v 1_{S+e}) - F(x v 1_S) for the final S.
  double final_gain = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t update_count;
};

struct LazyGreedyOptions {
  // Replaces lazy_update_cap(n, eps).
  std::optional<std::uint64_t> update_cap;
  // Total budget for the selection; entries that no longer fit are skipped.
  std::optional<double> budget;
  // Recompute every queued density at each acceptance with a separate,
  // uncounted oracle and record the ratio.
  bool shadow_check = false;
  bool record_transcript = true;
};

struct LazyGreedyResult {
  std::vector<Element> selected;  // in order of acceptance
  std::vector<DiscardRecord> discarded;
  std::vector<Element> dropped;  // zero gain or over budget
  double gain_achieved = 0.0;    // F(x v 1_S) - F(x)
  bool reached_target = false;
  std::uint64_t update_cap = 0;
  std::uint64_t queries_used = 0;          // oracle queries
  std::uint64_t marginal_evaluations = 0;  // F-marginals computed
  std::vector<LazyStep> transcript;
  double min_shadow_ratio = 1.0;
};

// Density greedy from x over the candidates, with lazily refreshed gains,
// stopping once the gain reaches `target` (which may be +infinity). Candidates
// with x_e = 1 are ignored. `state` is advanced to x v 1_S.
LazyGreedyResult lazy_density_greedy(const CountingOracle& oracle, std::span<const double> costs,
                                     MultilinearState& state, double target,
                                     std::span<const Element> candidates, double eps, std::size_t n,
                                     const LazyGreedyOptions& options = {});

LazyGreedyResult lazy_density_greedy(const CountingOracle& oracle, std::span<const double> costs,
                                     const SparseFractionalPoint& x, double target,
                                     std::span<const Element> candidates, double eps, std::size_t n,
                                     const LazyGreedyOptions& options = {});

}  // namespace subknap

#endif  // SUBKNAP_LAZY_GREEDY_HPP_
