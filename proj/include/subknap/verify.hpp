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

#ifndef SUBKNAP_VERIFY_HPP_
#define SUBKNAP_VERIFY_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "subknap/knapsack.hpp"

namespace subknap {

inline constexpr std::size_t kVerifyMaxN = 16;

// One family of inequalities evaluated over a run.
struct CheckOutcome {
  std::string name;
  bool ok = true;
  std::size_t evaluated = 0;
  std::size_t skipped = 0;  // not applicable, e.g. flagged phases
  // Smallest (lhs - rhs) seen; negative beyond the tolerance is a violation.
  double worst_slack = std::numeric_limits<double>::infinity();
  std::string witness;  // first violation

  // Records lhs >= rhs - tol.
  void record(double lhs, double rhs, double tol, const std::string& where);
};

struct RoundingStats {
  std::size_t trials = 0;
  double mass = 0.0;
  bool mass_integral = true;
  // max over fractional coordinates of |freq - x_e| / sqrt(x_e (1 - x_e) / N)
  double worst_frequency_z = 0.0;
  double F_x = 0.0;
  double mean_value = 0.0;
  double std_error = 0.0;
  GroupingCheck grouping;
  double max_rounded_up_cost = 0.0;  // over sample paths
  double max_path_cost = 0.0;        // full rounded set
  std::size_t infeasible_paths = 0;
};

struct VerifyOptions {
  double eps = 0.5;
  std::optional<std::size_t> t;
  std::optional<std::size_t> r;
  std::optional<std::size_t> phases;
  std::size_t k_max = kDefaultMaxFractional;
  std::uint64_t seed = 0;
  std::size_t rounding_trials = 10000;
  double rel_tol = 1e-7;  // relative to f(OPT)
};

struct VerifyReport {
  std::string instance;
  std::size_t n = 0;
  double eps = 0.0;
  GuessGrid grid;
  KnapsackResult result;
  double opt_value = 0.0;
  std::vector<Element> opt_set;
  std::vector<CheckOutcome> checks;
  std::optional<RoundingStats> rounding;
  std::size_t flagged_phases = 0;   // repeated selection in the OPT_1 stage
  std::size_t opt1_skips = 0;
  std::size_t large_skips = 0;

  bool ok() const;
  const CheckOutcome* find(const std::string& name) const;
};

// Runs the analysis-guided algorithm on a small instance and evaluates every
// per-phase guarantee from the traces, then rounds the fractional outcome
// `rounding_trials` times. CapacityError above kVerifyMaxN elements.
//
// Checks: opt1_gain, opt1_costs, large_costs, phase_budget, phase_recursion,
// discard_bound, density_shadow, rounding_frequency (integral mass only),
// rounding_value, rounding_cost (when the grouping certificate against OPT_1
// passes), feasibility.
VerifyReport verify_instance(const Instance& instance, const VerifyOptions& options);

}  // namespace subknap

#endif  // SUBKNAP_VERIFY_HPP_
