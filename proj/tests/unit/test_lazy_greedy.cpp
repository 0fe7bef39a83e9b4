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

#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "subknap/generate.hpp"
#include "subknap/lazy_greedy.hpp"
#include "unit/test_helpers.hpp"

namespace subknap {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::vector<Element> all_of(std::size_t n) {
  std::vector<Element> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<Element>(i);
  return v;
}

TEST_CASE("update cap") {
  CHECK(lazy_update_cap(200, 0.1) == 152);  // 2 ln(2000) / 0.1 = 152.0...
  CHECK(lazy_update_cap(10, 0.5) == 11);    // 4 ln 20 = 11.98
  CHECK_THROWS_AS(lazy_update_cap(10, 0.0), InputError);
}

TEST_CASE("modular objective is taken in value order without reinsertions") {
  Objective f = testing::modular({3.0, 2.0, 1.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {1.0, 1.0, 1.0};
  auto v = all_of(3);
  LazyGreedyResult r = lazy_density_greedy(oracle, costs, SparseFractionalPoint{}, kInf, v, 0.1, 3);
  CHECK(r.selected == std::vector<Element>{0, 1, 2});
  CHECK(r.gain_achieved == 6.0);
  for (const auto& step : r.transcript) CHECK(step.decision == LazyDecision::kAccepted);
  CHECK(r.transcript.size() == 3);
}

TEST_CASE("zero target stops right after initialization") {
  Objective f = testing::modular({3.0, 2.0, 1.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {0.5, 0.5, 0.5};
  auto v = all_of(3);
  MultilinearState state(oracle, SparseFractionalPoint{});
  oracle.reset_count();
  LazyGreedyResult r = lazy_density_greedy(oracle, costs, state, 0.0, v, 0.1, 3);
  CHECK(r.selected.empty());
  CHECK(r.queries_used == 3);
  CHECK(r.transcript.empty());
}

TEST_CASE("bad target and empty candidate list") {
  Objective f = testing::modular({1.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {1.0};
  std::vector<Element> none;
  CHECK_THROWS_AS(lazy_density_greedy(oracle, costs, SparseFractionalPoint{}, -1.0, none, 0.1, 1),
                  InputError);
  LazyGreedyResult r = lazy_density_greedy(oracle, costs, SparseFractionalPoint{}, 1.0, none, 0.1, 1);
  CHECK(r.selected.empty());
  CHECK(r.queries_used == 0);
}

TEST_CASE("halved gain is reinserted then accepted on the second pop") {
  // a -> {1,2,3,4}, b -> {3,4,5,6}, c -> {7}, unit weights and costs. Taking a
  // halves b from 4 to 2, which is below (1 - 0.1) * 4.
  WeightedCoverage g;
  g.universe_weights = {0, 1, 1, 1, 1, 1, 1, 1};
  g.covers = {{1, 2, 3, 4}, {3, 4, 5, 6}, {7}};
  Objective f(std::move(g));
  CountingOracle oracle(f);
  std::vector<double> costs = {1.0, 1.0, 1.0};
  auto v = all_of(3);
  LazyGreedyResult r = lazy_density_greedy(oracle, costs, SparseFractionalPoint{}, kInf, v, 0.1, 3);
  REQUIRE(r.transcript.size() == 4);
  CHECK(r.transcript[0].element == 0);
  CHECK(r.transcript[0].decision == LazyDecision::kAccepted);
  CHECK(r.transcript[1].element == 1);
  CHECK(r.transcript[1].cached_gain == 4.0);
  CHECK(r.transcript[1].fresh_gain == 2.0);
  CHECK(r.transcript[1].decision == LazyDecision::kReinserted);
  CHECK(r.transcript[2].element == 1);
  CHECK(r.transcript[2].cached_gain == 2.0);
  CHECK(r.transcript[2].update_count == 2);
  CHECK(r.transcript[2].decision == LazyDecision::kAccepted);
  CHECK(r.transcript[3].element == 2);
  CHECK(r.selected == std::vector<Element>{0, 1, 2});
  CHECK(r.gain_achieved == 7.0);
  // 3 initial gains + 4 pops.
  CHECK(r.marginal_evaluations == 7);
  CHECK(r.queries_used == 7);
}

TEST_CASE("ties on density go to the lowest id") {
  Objective f = testing::modular({1.0, 2.0, 2.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {0.5, 1.0, 1.0};
  auto v = all_of(3);
  LazyGreedyResult r = lazy_density_greedy(oracle, costs, SparseFractionalPoint{}, kInf, v, 0.1, 3);
  CHECK(r.selected == std::vector<Element>{0, 1, 2});
}

TEST_CASE("target stops the run once reached") {
  Objective f = testing::modular({3.0, 2.0, 1.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {1.0, 1.0, 1.0};
  auto v = all_of(3);
  LazyGreedyResult r = lazy_density_greedy(oracle, costs, SparseFractionalPoint{}, 4.0, v, 0.1, 3);
  CHECK(r.selected == std::vector<Element>{0, 1});
  CHECK(r.reached_target);
}

TEST_CASE("shadow check, query bound and determinism on random coverage") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = generate({.family = Family::kCoverage, .n = 80, .seed = seed});
    CountingOracle oracle(inst);
    auto v = all_of(inst.size());
    LazyGreedyOptions opts{.shadow_check = true};
    LazyGreedyResult r = lazy_density_greedy(oracle, inst.costs, SparseFractionalPoint{}, kInf, v,
                                             0.1, inst.size(), opts);
    CHECK(r.min_shadow_ratio >= 1.0 - 0.1 - 1e-12);
    CHECK(r.marginal_evaluations <= inst.size() * (r.update_cap + 2));
    CHECK(r.queries_used == r.marginal_evaluations);
    LazyGreedyResult again = lazy_density_greedy(oracle, inst.costs, SparseFractionalPoint{}, kInf,
                                                 v, 0.1, inst.size(), opts);
    CHECK(again.selected == r.selected);
    CHECK(again.transcript.size() == r.transcript.size());
  }
}

TEST_CASE("forced small cap discards entries whose gain has collapsed") {
  int discards = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = generate({.family = Family::kFacility, .n = 40, .seed = seed});
    CountingOracle oracle(inst);
    auto v = all_of(inst.size());
    const double eps = 0.3;
    LazyGreedyOptions opts{.update_cap = 1, .shadow_check = true};
    LazyGreedyResult r = lazy_density_greedy(oracle, inst.costs, SparseFractionalPoint{}, kInf, v,
                                             eps, inst.size(), opts);
    for (const auto& d : r.discarded) {
      ++discards;
      CHECK(d.update_count == 2);
      // Two refreshes, each below (1 - eps) of the previous value.
      CHECK(d.final_gain <= (1.0 - eps) * (1.0 - eps) * d.initial_gain + 1e-12);
      CHECK(std::find(r.selected.begin(), r.selected.end(), d.element) == r.selected.end());
    }
  }
  CHECK(discards > 0);
}

TEST_CASE("gain is measured from a fractional start") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    Instance inst = generate({.family = Family::kConcaveModular, .n = 12, .seed = seed});
    CountingOracle oracle(inst);
    SparseFractionalPoint x({2}, {{0, 0.5}, {5, 0.25}});
    auto v = all_of(inst.size());
    LazyGreedyResult r = lazy_density_greedy(oracle, inst.costs, x, 2.0, v, 0.2, inst.size());
    double expect = eval_exact(oracle, x.join(r.selected)) - eval_exact(oracle, x);
    CHECK(testing::close(r.gain_achieved, expect));
    CHECK(std::find(r.selected.begin(), r.selected.end(), 2u) == r.selected.end());
  }
}

TEST_CASE("budget mode never overspends") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Instance inst = generate({.family = Family::kCoverage, .n = 30, .seed = seed});
    CountingOracle oracle(inst);
    auto v = all_of(inst.size());
    LazyGreedyResult r = lazy_density_greedy(oracle, inst.costs, SparseFractionalPoint{}, kInf, v,
                                             0.1, inst.size(), {.budget = 1.0});
    CHECK(inst.cost(r.selected) <= 1.0 + 1e-9);
    CHECK_FALSE(r.selected.empty());
  }
}

}  // namespace
}  // namespace subknap
