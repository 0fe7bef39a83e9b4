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

#include "subknap/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "subknap/lazy_greedy.hpp"

namespace subknap {

namespace {

std::vector<Element> sorted(std::vector<Element> s) {
  std::sort(s.begin(), s.end());
  return s;
}

struct Search {
  const CountingOracle& oracle;
  const std::vector<double>& costs;
  std::vector<Element> current;
  std::vector<Element> best;
  double best_value = 0.0;

  // Values within the relative tolerance are ties: incremental states and
  // direct evaluation may differ in the last bits.
  void offer(const std::vector<Element>& set, double value) {
    const double tol = kRelTol * std::max(1.0, std::abs(best_value));
    if (value > best_value + tol || (value >= best_value - tol && set < best)) {
      best = set;
      best_value = value;
    }
  }

  // Extends `current` (value held by `state`) with ids >= from.
  void run(std::size_t from, const ObjectiveState& state, double cost) {
    const std::size_t n = costs.size();
    for (std::size_t j = from; j < n; ++j) {
      const Element e = static_cast<Element>(j);
      if (!within_budget(cost + costs[j])) continue;
      ObjectiveState next = state;
      oracle.commit(next, e);
      current.push_back(e);
      offer(current, next.value());
      const double left = cost + costs[j];
      std::vector<Element> reach = current;
      for (std::size_t k = j + 1; k < n; ++k) {
        if (within_budget(left + costs[k])) reach.push_back(static_cast<Element>(k));
      }
      // Monotone bound on every completion of `current` with later ids.
      if (reach.size() > current.size() &&
          !(oracle.value(reach) < best_value - kRelTol * std::max(1.0, std::abs(best_value)))) {
        run(j + 1, next, left);
      }
      current.pop_back();
    }
  }
};

BaselineResult finish(std::string tag, const CountingOracle& oracle, const Instance& instance,
                      std::vector<Element> set, std::uint64_t start) {
  BaselineResult r;
  r.algorithm = std::move(tag);
  r.set = sorted(std::move(set));
  r.value = oracle.value(r.set);
  r.cost = instance.cost(r.set);
  r.queries = oracle.query_count() - start;
  return r;
}

}  // namespace

BaselineResult brute_force_opt(const CountingOracle& oracle, const Instance& instance) {
  const std::size_t n = instance.size();
  if (n > kBruteForceMaxN) {
    throw CapacityError("brute force needs n <= " + std::to_string(kBruteForceMaxN) + ", got " +
                        std::to_string(n));
  }
  const std::uint64_t start = oracle.query_count();
  Search search{oracle, instance.costs, {}, {}, 0.0};
  ObjectiveState empty = oracle.state_of(std::vector<Element>{});
  search.best_value = empty.value();
  search.run(0, empty, 0.0);
  BaselineResult r;
  r.algorithm = "brute";
  r.set = search.best;
  r.value = oracle.value(r.set);
  r.cost = instance.cost(r.set);
  r.queries = oracle.query_count() - start;
  return r;
}

BaselineResult density_greedy_baseline(const CountingOracle& oracle, const Instance& instance,
                                       double eps) {
  const std::uint64_t start = oracle.query_count();
  const std::size_t n = instance.size();
  if (n == 0) return finish("density", oracle, instance, {}, start);
  std::vector<Element> all(n);
  for (std::size_t e = 0; e < n; ++e) all[e] = static_cast<Element>(e);
  LazyGreedyOptions opts;
  opts.budget = 1.0;
  opts.record_transcript = false;
  LazyGreedyResult greedy = lazy_density_greedy(oracle, instance.costs, SparseFractionalPoint{},
                                                std::numeric_limits<double>::infinity(), all, eps,
                                                n, opts);
  // Best singleton; the greedy run queried every singleton already, but
  // reading them again keeps this independent of its internals.
  Element single = 0;
  double single_value = -1.0;
  ObjectiveState empty = oracle.objective().empty_state();
  for (Element e : all) {
    double g = oracle.gain(empty, e);
    if (g > single_value) {
      single_value = g;
      single = e;
    }
  }
  if (single_value > greedy.gain_achieved) {
    return finish("density", oracle, instance, {single}, start);
  }
  return finish("density", oracle, instance, greedy.selected, start);
}

std::vector<Element> greedy_complete(const CountingOracle& oracle, std::span<const double> costs,
                                     std::span<const Element> seed) {
  struct Entry {
    double key;
    Element e;
  };
  auto lower = [](const Entry& a, const Entry& b) {
    if (a.key != b.key) return a.key < b.key;
    return a.e > b.e;
  };
  std::vector<Element> chosen(seed.begin(), seed.end());
  ObjectiveState state = oracle.state_of(chosen);
  double spent = 0.0;
  for (Element e : chosen) spent += costs[e];
  std::priority_queue<Entry, std::vector<Entry>, decltype(lower)> queue(lower);
  for (std::size_t j = 0; j < costs.size(); ++j) {
    Element e = static_cast<Element>(j);
    if (state.contains(e) || !within_budget(spent + costs[e])) continue;
    queue.push({oracle.gain(state, e) / costs[e], e});
  }
  while (!queue.empty()) {
    Entry top = queue.top();
    queue.pop();
    if (!within_budget(spent + costs[top.e])) continue;
    double g = oracle.gain(state, top.e);
    if (g <= kSnapTol * std::max(1.0, state.value())) continue;
    Entry fresh{g / costs[top.e], top.e};
    // Cached keys only overestimate, so beating the next cached key means
    // being the true best (with the lowest id on ties).
    if (!queue.empty() && lower(fresh, queue.top())) {
      queue.push(fresh);
      continue;
    }
    oracle.commit(state, top.e);
    spent += costs[top.e];
    chosen.push_back(top.e);
  }
  return chosen;
}

BaselineResult sviridenko(const CountingOracle& oracle, const Instance& instance, std::size_t max_n) {
  const std::size_t n = instance.size();
  if (n > max_n) {
    throw CapacityError("partial enumeration is capped at n <= " + std::to_string(max_n) +
                        ", got " + std::to_string(n) + "; use the density baseline instead");
  }
  const std::uint64_t start = oracle.query_count();
  const auto& c = instance.costs;
  std::vector<Element> best;
  double best_value = -1.0;
  auto consider = [&](std::vector<Element> seed) {
    std::vector<Element> full = sorted(greedy_complete(oracle, c, seed));
    double v = oracle.value(full);
    if (v > best_value || (v == best_value && full < best)) {
      best_value = v;
      best = std::move(full);
    }
  };
  consider({});
  for (Element a = 0; a < n; ++a) {
    consider({a});
    for (Element b = a + 1; b < n; ++b) {
      if (!within_budget(c[a] + c[b])) continue;
      consider({a, b});
      for (Element d = b + 1; d < n; ++d) {
        if (!within_budget(c[a] + c[b] + c[d])) continue;
        consider({a, b, d});
      }
    }
  }
  return finish("sviridenko", oracle, instance, best, start);
}

}  // namespace subknap
