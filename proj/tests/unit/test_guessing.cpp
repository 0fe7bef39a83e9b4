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
#include <set>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "subknap/guessing.hpp"
#include "unit/test_helpers.hpp"

namespace subknap {
namespace {

GuessGrid small_grid() {
  GuessGrid g;
  g.eps = 0.5;
  g.t = g.r = g.phases = 1;
  g.M = 1.0;
  return g;
}

TEST_CASE("default couplings") {
  GuessGrid g = GuessGrid::defaults(0.5, 2.0);
  CHECK(g.t == 8);
  CHECK(g.r == 2);
  CHECK(g.phases == 2);
  GuessGrid h = GuessGrid::defaults(1.0 / 3.0, 1.0);
  CHECK(h.t == 27);
  CHECK(h.r == 3);
  CHECK(h.phases == 3);
}

TEST_CASE("grid sizes for the smallest configuration") {
  GuessGrid g = small_grid();
  CHECK(g.v_max() == 2);  // {0, M/2, M}
  CHECK(g.W_max() == 2);  // {0, M/2, M}
  CHECK(g.w_max(GridValue{0, g.W_step()}) == 0);
  CHECK(g.w_max(GridValue{2, g.W_step()}) == 4);  // r / eps^2
  // 3 v-values times (1 + 2 * 5^2) (W, w_1, w_2) combinations.
  CHECK(guess_count(g) == 153.0);
}

TEST_CASE("enumerator visits every sequence once") {
  GuessGrid g = small_grid();
  GuessEnumerator it(g, 1e6);
  GuessSequence seq;
  std::set<std::vector<std::int64_t>> seen;
  while (it.next(seq)) {
    REQUIRE(seq.v.size() == 1);
    REQUIRE(seq.v[0].size() == 1);
    REQUIRE(seq.w[0].size() == 2);
    std::vector<std::int64_t> key = {seq.v[0][0].multiplier, seq.W[0].multiplier,
                                     seq.w[0][0].multiplier, seq.w[0][1].multiplier};
    CHECK(seq.W[0].value() <= g.M + 1e-12);
    for (const auto& w : seq.w[0]) CHECK(w.value() <= seq.W[0].value() + 1e-12);
    seen.insert(key);
  }
  CHECK(seen.size() == 153);
  CHECK_FALSE(it.next(seq));
}

TEST_CASE("thinned enumeration matches its closed-form count") {
  GuessGrid g = GuessGrid::defaults(0.25, 1.0);
  g.t = 2;
  g.r = 1;
  g.phases = 1;
  g.v_stride = 4;
  g.W_stride = 2;
  g.w_stride = 8;
  GuessEnumerator it(g, 1e7);
  GuessSequence seq;
  double count = 0;
  while (it.next(seq)) ++count;
  CHECK(count == guess_count(g));
}

TEST_CASE("enumeration limit") {
  GuessGrid g = small_grid();
  CHECK_THROWS_AS(GuessEnumerator(g, 0.0), GuessLimitError);
  try {
    GuessEnumerator(GuessGrid::defaults(0.5, 1.0), 1e3);
    FAIL("expected a limit error");
  } catch (const GuessLimitError& err) {
    CHECK(err.count() > 1e3);
  }
}

TEST_CASE("grid validation") {
  GuessGrid g = small_grid();
  g.eps = 1.0;
  CHECK_THROWS_AS(g.validate(), InputError);
  g = small_grid();
  g.t = 0;
  CHECK_THROWS_AS(g.validate(), InputError);
  g = small_grid();
  g.M = 0.0;
  CHECK_THROWS_AS(g.validate(), InputError);
}

TEST_CASE("floor_of brackets its argument") {
  for (double step : {0.1, 1.0 / 3.0, 0.7, 1e-3}) {
    for (double x : {0.0, 0.05, 0.3, 1.0, 2.1, 3.3, 17.0}) {
      GridValue g = GridValue::floor_of(x, step);
      CHECK(g.value() <= x);
      CHECK(static_cast<double>(g.multiplier + 1) * step > x);
    }
  }
  CHECK(GridValue::floor_of(0.35, 0.1).multiplier == 3);
  CHECK(GridValue::floor_of(0.3, 0.1).multiplier == 2);  // 3 * 0.1 exceeds 0.3 in doubles
  CHECK(GridValue::floor_of(-1.0, 0.1).multiplier == 0);
  CHECK(GridValue::floor_of(5.0, 0.0).multiplier == 0);
}

TEST_CASE("greedy order of an optimal set") {
  WeightedCoverage c;
  c.universe_weights = {1.0, 1.0, 1.0, 1.0, 1.0};
  c.covers = {{1}, {1, 2, 3}, {3, 4}};
  Objective f(std::move(c));
  CountingOracle oracle(f);
  std::vector<Element> opt = {0, 1, 2};
  CHECK(greedy_order_opt(oracle, opt) == std::vector<Element>{1, 2, 0});
  // Equal gains go to the lowest id.
  Objective g = testing::two_set_coverage();
  CountingOracle og(g);
  std::vector<Element> both = {1, 0};
  CHECK(greedy_order_opt(og, both) == std::vector<Element>{0, 1});
}

TEST_CASE("partition into the first t elements and light remainder") {
  Objective f = testing::modular({5.0, 4.0, 3.0, 2.0, 1.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {0.3, 0.1, 0.05, 0.2, 0.05};
  std::vector<Element> order = {0, 1, 2, 3, 4};
  OptPartition part = partition_opt(oracle, costs, order, 0.5, 2);
  CHECK(part.opt1 == std::vector<Element>{0, 1});
  CHECK(testing::close(part.opt1_cost, 0.4));
  CHECK(testing::close(part.heavy_threshold, 0.15));  // 0.25 * (1 - 0.4)
  CHECK(part.opt2 == std::vector<Element>{2, 4});
  REQUIRE(part.dropped.size() == 1);
  CHECK(part.dropped[0].element == 3);
  CHECK(testing::close(part.dropped[0].marginal_on_opt1, 2.0));
  CHECK(testing::close(part.dropped[0].bound, 4.5));  // f(OPT_1) / t
  CHECK(testing::close(part.opt_value, 15.0));

  OptPartition small = partition_opt(oracle, costs, order, 0.5, 9);
  CHECK(small.opt1.size() == 5);
  CHECK(small.opt2.empty());
}

TEST_CASE("analysis guesser follows the optimum and enforces call order") {
  Objective f = testing::modular({5.0, 4.0, 3.0});
  CountingOracle oracle(f);
  std::vector<double> costs = {0.3, 0.1, 0.1};
  std::vector<Element> order = {0, 1, 2};
  GuessGrid grid = small_grid();
  grid.M = 12.0;
  OptPartition part = partition_opt(oracle, costs, order, 0.5, 1);
  AnalysisGuesser guesser(f, costs, part, grid);
  MultilinearState y(oracle, SparseFractionalPoint{});

  CHECK_THROWS_AS(guesser.phase_target(1, y), std::logic_error);
  auto v = guesser.opt1_threshold(1, 1, y);
  REQUIRE(v.has_value());
  // Marginal of o_1 = element 0 is 5; the v-grid step is eps M / t = 6.
  CHECK(v->multiplier == 0);
  CHECK_THROWS_AS(guesser.opt1_threshold(1, 2, y), std::logic_error);
  guesser.opt1_selected(1, 1, Element{2});
  CHECK(guesser.trace().phases[0].opt1[0].matched == Element{0});

  GridValue W = guesser.phase_target(1, y);
  // OPT_2 = {1, 2}: marginal 7 on the empty point, step eps M = 6.
  CHECK(W.multiplier == 1);
  GridValue w = guesser.large_threshold(1, 1, y);
  CHECK(w.value() <= 4.0);
  CHECK(w.value() > 4.0 - grid.w_step(W));
  guesser.large_selected(1, 1, Element{1});
  CHECK(guesser.trace().phases[0].large[0].matched == Element{1});
}

TEST_CASE("analysis guesser skips when nothing in OPT_1 has value") {
  Objective f = testing::two_set_coverage();
  CountingOracle oracle(f);
  std::vector<double> costs = {0.5, 0.5};
  std::vector<Element> order = {0};
  GuessGrid grid = small_grid();
  grid.M = 2.0;
  OptPartition part = partition_opt(oracle, costs, order, 0.5, 1);
  AnalysisGuesser guesser(f, costs, part, grid);
  MultilinearState y(oracle, SparseFractionalPoint::indicator({0}));
  CHECK_FALSE(guesser.opt1_threshold(1, 1, y).has_value());
}

}  // namespace
}  // namespace subknap
