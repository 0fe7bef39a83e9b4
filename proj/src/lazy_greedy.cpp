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

#include "subknap/lazy_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

namespace subknap {

namespace {

struct Entry {
  double key;
  Element element;
  double cached;
  std::uint64_t updates;
};

// Max-heap on density, lowest id first on equal keys.
struct Lower {
  bool operator()(const Entry& a, const Entry& b) const {
    if (a.key != b.key) return a.key < b.key;
    return a.element > b.element;
  }
};

using Queue = std::priority_queue<Entry, std::vector<Entry>, Lower>;

double shadow_ratio(const CountingOracle& shadow, std::span<const double> costs,
                    const MultilinearState& state, const Queue& queue, Element chosen,
                    double chosen_gain) {
  double own = chosen_gain / costs[chosen];
  double best = own;
  // priority_queue hides its container; walk a copy.
  Queue rest = queue;
  while (!rest.empty()) {
    Element e = rest.top().element;
    rest.pop();
    best = std::max(best, state.probe_gain(shadow, e) / costs[e]);
  }
  return best > 0.0 ? own / best : 1.0;
}

}  // namespace

std::uint64_t lazy_update_cap(std::size_t n, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  double cap = 2.0 * std::log(static_cast<double>(std::max<std::size_t>(n, 1)) / eps) / eps;
  return cap <= 0.0 ? 0 : static_cast<std::uint64_t>(std::floor(cap));
}

LazyGreedyResult lazy_density_greedy(const CountingOracle& oracle, std::span<const double> costs,
                                     MultilinearState& state, double target,
                                     std::span<const Element> candidates, double eps, std::size_t n,
                                     const LazyGreedyOptions& options) {
  if (std::isnan(target) || target < 0.0) throw InputError("lazy greedy: target gain must be >= 0");
  LazyGreedyResult result;
  result.update_cap = options.update_cap ? *options.update_cap : lazy_update_cap(n, eps);
  if (candidates.empty()) return result;

  const std::uint64_t start_queries = oracle.query_count();
  const double base = state.value();
  const double target_tol = std::isinf(target) ? 0.0 : kRelTol * std::max(1.0, target);
  auto zero_tol = [&] { return kSnapTol * std::max(1.0, std::abs(state.value())); };
  double spent = 0.0;
  std::optional<CountingOracle> shadow;
  if (options.shadow_check) shadow.emplace(oracle.objective());

  Queue queue;
  std::vector<std::pair<Element, double>> initial;
  for (Element e : candidates) {
    if (e >= costs.size()) throw InputError("lazy greedy: candidate id out of range");
    if (state.coordinate(e) == 1.0) continue;
    double g = state.gain(oracle, e);
    ++result.marginal_evaluations;
    initial.emplace_back(e, g);
    queue.push(Entry{g / costs[e], e, g, 0});
  }

  auto record = [&](const Entry& entry, double fresh, LazyDecision decision, double ratio) {
    if (!options.record_transcript) return;
    result.transcript.push_back(
        LazyStep{entry.element, entry.cached, fresh, entry.updates, decision, ratio});
  };

  auto done = [&] { return state.value() - base >= target - target_tol; };

  while (!done() && !queue.empty()) {
    Entry entry = queue.top();
    queue.pop();
    const Element e = entry.element;
    if (options.budget && spent + costs[e] > *options.budget + kRelTol) {
      result.dropped.push_back(e);
      record(entry, std::numeric_limits<double>::quiet_NaN(), LazyDecision::kSkippedBudget,
             std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    double fresh = state.gain(oracle, e);
    ++result.marginal_evaluations;
    ++entry.updates;
    if (fresh <= zero_tol()) {
      result.dropped.push_back(e);
      record(entry, fresh, LazyDecision::kDroppedZero, std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    if (fresh >= (1.0 - eps) * entry.cached) {
      double ratio = std::numeric_limits<double>::quiet_NaN();
      if (shadow) {
        ratio = shadow_ratio(*shadow, costs, state, queue, e, fresh);
        result.min_shadow_ratio = std::min(result.min_shadow_ratio, ratio);
      }
      entry.cached = fresh;
      record(entry, fresh, LazyDecision::kAccepted, ratio);
      state.join(oracle, e);
      spent += costs[e];
      result.selected.push_back(e);
      continue;
    }
    if (entry.updates <= result.update_cap) {
      record(entry, fresh, LazyDecision::kReinserted, std::numeric_limits<double>::quiet_NaN());
      entry.cached = fresh;
      entry.key = fresh / costs[e];
      queue.push(entry);
    } else {
      record(entry, fresh, LazyDecision::kDiscarded, std::numeric_limits<double>::quiet_NaN());
      double first = 0.0;
      for (auto [id, g] : initial) {
        if (id == e) first = g;
      }
      result.discarded.push_back(DiscardRecord{e, first, std::numeric_limits<double>::quiet_NaN(),
                                               entry.updates});
    }
  }

  result.gain_achieved = state.value() - base;
  result.reached_target = done();
  if (shadow) {
    for (auto& d : result.discarded) d.final_gain = state.probe_gain(*shadow, d.element);
  }
  result.queries_used = oracle.query_count() - start_queries;
  return result;
}

LazyGreedyResult lazy_density_greedy(const CountingOracle& oracle, std::span<const double> costs,
                                     const SparseFractionalPoint& x, double target,
                                     std::span<const Element> candidates, double eps, std::size_t n,
                                     const LazyGreedyOptions& options) {
  MultilinearState state(oracle, x);
  return lazy_density_greedy(oracle, costs, state, target, candidates, eps, n, options);
}

}  // namespace subknap
