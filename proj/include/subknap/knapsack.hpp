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

#ifndef SUBKNAP_KNAPSACK_HPP_
#define SUBKNAP_KNAPSACK_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "subknap/baselines.hpp"
#include "subknap/guessing.hpp"
#include "subknap/lazy_greedy.hpp"
#include "subknap/rounding.hpp"

namespace subknap {

enum class GuessMode { kEnumerate, kPractical, kAnalysisGuided };

GuessMode parse_mode(std::string_view name);  // enumerate | practical | analysis
std::string_view mode_name(GuessMode mode);

struct KnapsackParams {
  double eps = 0.5;
  // Overrides of the default couplings t = ceil(1/eps^3), r = P = ceil(1/eps).
  // Practical mode defaults to t = r = P = 1 instead.
  std::optional<std::size_t> t;
  std::optional<std::size_t> r;
  std::optional<std::size_t> phases;
  std::size_t k_max = kDefaultMaxFractional;
  GuessMode mode = GuessMode::kPractical;
  // Practical mode grid thinning; 0 keeps three points per grid (0, middle, top).
  std::int64_t v_stride = 0;
  std::int64_t W_stride = 0;
  std::int64_t w_stride = 0;
  // Refuse to enumerate more guess sequences than this, per value of M.
  double limit = 1e5;
  std::size_t rounding_trials = 4;
  std::uint64_t seed = 0;
  bool shadow_check = false;  // lazy greedy debug shadow
};

// Grid for one value of M after applying mode defaults and overrides.
GuessGrid make_grid(const KnapsackParams& params, double M);

struct StepRecord {
  std::size_t i = 0;
  std::optional<GridValue> threshold;
  std::optional<Element> chosen;
  bool skipped = false;           // no candidate, or no guess supplied
  double coordinate_before = 0.0; // x_e before the step
  bool repeated = false;          // chosen element was already positive
  bool no_op = false;             // chosen element was already at 1
};

struct DensityStageRecord {
  bool ran = false;
  double target = 0.0;  // gain still missing when the stage starts
  std::size_t filtered_out = 0;
  std::vector<Element> selected;
  std::vector<DiscardRecord> discarded;
  double min_shadow_ratio = 1.0;
  bool reached_target = false;
};

struct PhaseTrace {
  std::size_t p = 0;
  SparseFractionalPoint y0;  // x_{p-1}
  double F_y0 = 0.0;
  std::vector<StepRecord> opt1_steps;
  std::vector<Element> A;
  SparseFractionalPoint yt;  // after the OPT_1 stage, also z^{(p,0)}
  double F_yt = 0.0;
  GridValue W;
  bool large_skipped = false;  // W_p = 0
  std::size_t r_p = 0;
  std::vector<StepRecord> large_steps;
  std::vector<Element> B;
  std::vector<double> F_z;  // F(z^{(p,i)}), i = 0..
  bool ended_early = false;
  DensityStageRecord density;
  std::vector<Element> C;
  SparseFractionalPoint x;  // x_p
  double F_x = 0.0;
  bool repeated_selection = false;
};

struct FractionalOutcome {
  SparseFractionalPoint x;
  double value = 0.0;
  std::vector<PhaseTrace> phases;
  std::uint64_t queries = 0;
};

struct EngineOptions {
  std::size_t k_max = kDefaultMaxFractional;
  bool shadow_check = false;
};

// One run of the phase loop for a fixed source of guesses.
FractionalOutcome knapsack_guess(const CountingOracle& oracle, const Instance& instance,
                                 GuessSupplier& guesses, const GuessGrid& grid,
                                 const EngineOptions& options = {});

// Candidates for M: M0 (1 + eps)^j for j = 0..ceil(log_{1+eps} 4), where M0
// is the better of budget-respecting lazy density greedy and the best single
// element. Empty when nothing has positive value.
std::vector<double> estimate_M(const CountingOracle& oracle, const Instance& instance, double eps);

struct KnapsackResult {
  std::vector<Element> set;  // sorted
  double value = 0.0;
  double cost = 0.0;
  // "knapsack" when a rounded guess run won, otherwise the baseline tag.
  std::string source;
  std::uint64_t queries = 0;
  std::size_t M_candidates = 0;
  std::size_t runs = 0;
  std::size_t infeasible_discarded = 0;
  double baseline_value = 0.0;
  double best_run_value = 0.0;  // best feasible rounded set over all runs
  std::optional<double> best_M;
  std::optional<FractionalOutcome> best_fractional;
  std::optional<RoundingTranscript> best_rounding;
  // Analysis-guided mode only.
  std::optional<OptPartition> partition;
  std::optional<AnalysisTrace> analysis;
};

// Outer loop: every M candidate and every guess sequence of the mode, each
// fractional outcome rounded `rounding_trials` times; over-budget roundings
// are discarded. The best set is then compared with the density baseline.
KnapsackResult knapsack(const CountingOracle& oracle, const Instance& instance,
                        const KnapsackParams& params);

}  // namespace subknap

#endif  // SUBKNAP_KNAPSACK_HPP_
