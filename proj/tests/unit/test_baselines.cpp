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

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "subknap/baselines.hpp"
#include "subknap/generate.hpp"
#include "unit/test_helpers.hpp"

namespace subknap {
namespace {

// Best feasible set by listing all 2^n subsets; values within 1e-9 relative
// are ties, won by the smallest set in lexicographic order of sorted ids.
BaselineResult naive_opt(const Instance& inst) {
  const std::size_t n = inst.size();
  BaselineResult best;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Element> s;
    for (std::size_t e = 0; e < n; ++e) {
      if (mask >> e & 1U) s.push_back(static_cast<Element>(e));
    }
    if (!within_budget(inst.cost(s))) continue;
    double v = inst.objective.value(s);
    const double tol = 1e-9 * std::max(1.0, best.value);
    if (v > best.value + tol || (v >= best.value - tol && s < best.set)) {
      best.value = v;
      best.set = s;
    }
  }
  return best;
}

Instance random_instance(Family family, std::size_t n, std::uint64_t seed) {
  GenParams p;
  p.family = family;
  p.n = n;
  p.seed = seed;
  p.cost_max = 0.45;
  return generate(p);
}

TEST_CASE("brute force on the modular example") {
  Instance inst = make_instance({0.5, 0.6, 0.4}, testing::modular({3.0, 2.0, 1.0}));
  CountingOracle oracle(inst);
  BaselineResult r = brute_force_opt(oracle, inst);
  CHECK(r.set == std::vector<Element>{0, 2});
  CHECK(r.value == 4.0);
  CHECK(testing::close(r.cost, 0.9));
  CHECK(r.algorithm == "brute");
}

TEST_CASE("brute force takes everything when the budget allows") {
  Instance inst = make_instance({0.2, 0.3, 0.1}, testing::modular({1.0, 1.0, 1.0}));
  CountingOracle oracle(inst);
  CHECK(brute_force_opt(oracle, inst).set == std::vector<Element>{0, 1, 2});
}

TEST_CASE("brute force on an empty instance and above its size limit") {
  Instance empty = make_instance({2.0}, testing::modular({1.0}));
  REQUIRE(empty.size() == 0);
  CountingOracle oracle(empty);
  BaselineResult r = brute_force_opt(oracle, empty);
  CHECK(r.set.empty());
  CHECK(r.value == 0.0);

  Instance big = random_instance(Family::kCoverage, 25, 1);
  CountingOracle big_oracle(big);
  CHECK_THROWS_AS(brute_force_opt(big_oracle, big), CapacityError);
}

TEST_CASE("brute force agrees with full enumeration") {
  const Family families[] = {Family::kCoverage, Family::kFacility, Family::kConcaveModular};
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Family fam = families[seed % 3];
    Instance inst = random_instance(fam, 6 + seed % 7, seed);
    CountingOracle oracle(inst);
    BaselineResult fast = brute_force_opt(oracle, inst);
    BaselineResult slow = naive_opt(inst);
    CAPTURE(seed);
    CHECK(testing::close(fast.value, slow.value));
    CHECK(fast.set == slow.set);
    CHECK(within_budget(fast.cost));
  }
}

TEST_CASE("density baseline: many cheap items against one valuable item") {
  // Five items of value 1 and cost 0.1 (density 10), one of cost 1.
  std::vector<double> values = {1.0, 1.0, 1.0, 1.0, 1.0, 4.0};
  std::vector<double> costs = {0.1, 0.1, 0.1, 0.1, 0.1, 1.0};
  {
    Instance inst = make_instance(costs, testing::modular(values));
    CountingOracle oracle(inst);
    BaselineResult r = density_greedy_baseline(oracle, inst, 0.1);
    CHECK(r.set == std::vector<Element>{0, 1, 2, 3, 4});
    CHECK(r.value == 5.0);
    CHECK(r.algorithm == "density");
  }
  values.back() = 6.0;
  {
    Instance inst = make_instance(costs, testing::modular(values));
    CountingOracle oracle(inst);
    BaselineResult r = density_greedy_baseline(oracle, inst, 0.1);
    CHECK(r.set == std::vector<Element>{5});
    CHECK(r.value == 6.0);
  }
}

TEST_CASE("density baseline on one element and against singletons") {
  Instance one = make_instance({0.7}, testing::modular({2.5}));
  CountingOracle oracle(one);
  CHECK(density_greedy_baseline(oracle, one, 0.1).set == std::vector<Element>{0});

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = random_instance(Family::kFacility, 15, seed);
    CountingOracle o(inst);
    BaselineResult r = density_greedy_baseline(o, inst, 0.1);
    double best_single = 0.0;
    for (Element e = 0; e < inst.size(); ++e) {
      best_single = std::max(best_single, inst.objective.value(std::vector<Element>{e}));
    }
    CHECK(r.value >= best_single);
    CHECK(within_budget(r.cost));
  }
}

TEST_CASE("exact greedy completion skips what does not fit") {
  Instance inst = make_instance({0.5, 0.6, 0.4}, testing::modular({3.0, 2.0, 1.0}));
  CountingOracle oracle(inst);
  // Densities 6, 3.33, 2.5: takes 0, skips 1, takes 2.
  std::vector<Element> none;
  CHECK(greedy_complete(oracle, inst.costs, none) == std::vector<Element>{0, 2});
  std::vector<Element> seed = {1};
  CHECK(greedy_complete(oracle, inst.costs, seed) == std::vector<Element>{1, 2});
}

TEST_CASE("partial enumeration is exact on tiny instances") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Instance inst = random_instance(Family::kCoverage, 3, seed);
    CountingOracle oracle(inst);
    CHECK(testing::close(sviridenko(oracle, inst).value, brute_force_opt(oracle, inst).value));
  }
}

TEST_CASE("partial enumeration meets its guarantee") {
  const Family families[] = {Family::kCoverage, Family::kFacility, Family::kConcaveModular};
  const double bound = 1.0 - std::exp(-1.0);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Instance inst = random_instance(families[seed % 3], 8 + seed % 9, 100 + seed);
    CountingOracle oracle(inst);
    BaselineResult opt = brute_force_opt(oracle, inst);
    BaselineResult sv = sviridenko(oracle, inst);
    CAPTURE(seed);
    CHECK(sv.value >= bound * opt.value - 1e-9);
    CHECK(within_budget(sv.cost));
    CHECK(sv.algorithm == "sviridenko");
  }
  Instance big = random_instance(Family::kCoverage, 20, 3);
  CountingOracle oracle(big);
  CHECK_THROWS_AS(sviridenko(oracle, big, 10), CapacityError);
}

}  // namespace
}  // namespace subknap
