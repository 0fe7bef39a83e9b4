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

#ifndef SUBKNAP_ORACLE_HPP_
#define SUBKNAP_ORACLE_HPP_

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "subknap/objective.hpp"

namespace subknap {

// Knapsack instance with budget normalized to 1. Every cost lies in (0, 1];
// elements that could never fit were dropped and the rest reindexed.
struct Instance {
  std::vector<double> costs;
  Objective objective;
  // Id of each element in the file it was loaded from.
  std::vector<std::int64_t> original_ids;
  std::string name;

  std::size_t size() const { return costs.size(); }
  double cost(std::span<const Element> set) const;
};

// Builds an Instance from raw costs and a declared capacity: divides by the
// capacity, drops elements with normalized cost > 1 and restricts the
// objective accordingly. Throws InputError on non-positive costs/capacity.
Instance make_instance(std::vector<double> raw_costs, const Objective& objective,
                       double capacity = 1.0, std::string name = {});

// Value oracle that counts set-function evaluations.
//
// Accounting: every f(S) handed to the caller costs one query. value() and
// state_of() return f(S); gain() returns f(S + e) - f(S) where f(S) is already
// held by the state. commit() is free when it adds the element whose gain was
// just queried on the same state, since f(S + e) is then already known.
class CountingOracle {
 public:
  explicit CountingOracle(const Objective& objective) : objective_(&objective) {}
  explicit CountingOracle(const Instance& instance) : objective_(&instance.objective) {}
  CountingOracle(const CountingOracle&) = delete;
  CountingOracle& operator=(const CountingOracle&) = delete;

  const Objective& objective() const { return *objective_; }
  std::size_t size() const { return objective_->size(); }

  double value(std::span<const Element> set) const;
  ObjectiveState state_of(std::span<const Element> set) const;
  double gain(ObjectiveState& state, Element e) const;
  // Like gain() but leaves the state untouched; still one query.
  double peek_gain(const ObjectiveState& state, Element e) const;
  void commit(ObjectiveState& state, Element e) const;

  std::uint64_t query_count() const { return count_.load(std::memory_order_relaxed); }
  void reset_count() { count_.store(0, std::memory_order_relaxed); }

 private:
  void tick() const { count_.fetch_add(1, std::memory_order_relaxed); }

  const Objective* objective_;
  mutable std::atomic<std::uint64_t> count_{0};
};

struct SubmodularityWitness {
  enum class Kind { kNotMonotone, kNotSubmodular };
  Kind kind;
  std::vector<Element> smaller;  // S
  std::vector<Element> larger;   // T, S subset of T
  Element element;               // e not in T
  double gain_smaller;           // f(S + e) - f(S)
  double gain_larger;            // f(T + e) - f(T)
};

struct SubmodularityCheck {
  bool ok = true;
  std::optional<SubmodularityWitness> witness;
};

inline constexpr std::size_t kMaxCheckSize = 16;

// Exhaustive check over all 2^n subsets. Throws CapacityError for n > 16.
SubmodularityCheck check_monotone_submodular(const Objective& objective);

}  // namespace subknap

#endif  // SUBKNAP_ORACLE_HPP_
