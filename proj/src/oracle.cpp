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

#include "subknap/oracle.hpp"

#include <cmath>

namespace subknap {

double Instance::cost(std::span<const Element> set) const {
  double c = 0.0;
  for (Element e : set) {
    if (e >= costs.size()) throw InputError("element id out of range");
    c += costs[e];
  }
  return c;
}

Instance make_instance(std::vector<double> raw_costs, const Objective& objective, double capacity,
                       std::string name) {
  if (!(capacity > 0.0) || !std::isfinite(capacity)) throw InputError("capacity must be positive");
  if (raw_costs.size() != objective.size()) {
    throw InputError("costs has " + std::to_string(raw_costs.size()) + " entries but objective has " +
                     std::to_string(objective.size()) + " elements");
  }
  std::vector<Element> kept;
  std::vector<double> costs;
  std::vector<std::int64_t> original;
  for (std::size_t e = 0; e < raw_costs.size(); ++e) {
    double c = raw_costs[e];
    if (!(c > 0.0) || !std::isfinite(c)) {
      throw InputError("cost of element " + std::to_string(e) + " must be positive");
    }
    c /= capacity;
    if (c > 1.0) continue;
    kept.push_back(static_cast<Element>(e));
    costs.push_back(c);
    original.push_back(static_cast<std::int64_t>(e));
  }
  Objective restricted =
      kept.size() == objective.size() ? objective : objective.restrict_to(kept);
  return Instance{std::move(costs), std::move(restricted), std::move(original), std::move(name)};
}

double CountingOracle::value(std::span<const Element> set) const {
  tick();
  return objective_->value(set);
}

ObjectiveState CountingOracle::state_of(std::span<const Element> set) const {
  tick();
  return objective_->state_of(set);
}

double CountingOracle::gain(ObjectiveState& state, Element e) const {
  if (e >= objective_->size()) throw InputError("element id out of range");
  if (state.contains(e)) return 0.0;
  tick();
  state.set_last_queried(e);
  return state.gain(e);
}

double CountingOracle::peek_gain(const ObjectiveState& state, Element e) const {
  if (e >= objective_->size()) throw InputError("element id out of range");
  if (state.contains(e)) return 0.0;
  tick();
  return state.gain(e);
}

void CountingOracle::commit(ObjectiveState& state, Element e) const {
  if (e >= objective_->size()) throw InputError("element id out of range");
  if (state.contains(e)) return;
  if (state.last_queried() != static_cast<std::int64_t>(e)) tick();
  state.add(e);
}

namespace {

std::vector<Element> members(std::size_t mask, std::size_t n) {
  std::vector<Element> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (mask >> i & 1U) out.push_back(static_cast<Element>(i));
  }
  return out;
}

}  // namespace

SubmodularityCheck check_monotone_submodular(const Objective& objective) {
  const std::size_t n = objective.size();
  if (n > kMaxCheckSize) {
    throw CapacityError("check_monotone_submodular: n = " + std::to_string(n) +
                        " exceeds the exhaustive limit of " + std::to_string(kMaxCheckSize));
  }
  const std::size_t total = std::size_t{1} << n;
  std::vector<double> table(total);
  for (std::size_t mask = 0; mask < total; ++mask) table[mask] = objective.value(members(mask, n));

  auto tol = [&](double v) { return kRelTol * std::max(1.0, std::abs(v)); };
  SubmodularityCheck result;
  // Monotonicity per element plus the local exchange condition
  // f(S+a) - f(S) >= f(S+a+b) - f(S+b), which together with S ranging over all
  // subsets is equivalent to diminishing returns for all S subset of T.
  for (std::size_t mask = 0; mask < total; ++mask) {
    for (std::size_t a = 0; a < n; ++a) {
      if (mask >> a & 1U) continue;
      std::size_t with_a = mask | (std::size_t{1} << a);
      double gain_a = table[with_a] - table[mask];
      if (gain_a < -tol(table[mask])) {
        result.ok = false;
        result.witness = SubmodularityWitness{SubmodularityWitness::Kind::kNotMonotone,
                                              members(mask, n), members(mask, n),
                                              static_cast<Element>(a), gain_a, gain_a};
        return result;
      }
      for (std::size_t b = 0; b < n; ++b) {
        if (b == a || (mask >> b & 1U)) continue;
        std::size_t with_b = mask | (std::size_t{1} << b);
        double gain_a_after_b = table[with_b | (std::size_t{1} << a)] - table[with_b];
        if (gain_a_after_b > gain_a + tol(table[with_b])) {
          result.ok = false;
          result.witness = SubmodularityWitness{SubmodularityWitness::Kind::kNotSubmodular,
                                                members(mask, n), members(with_b, n),
                                                static_cast<Element>(a), gain_a, gain_a_after_b};
          return result;
        }
      }
    }
  }
  return result;
}

}  // namespace subknap
