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

#include <thread>
#include <vector>

#include "doctest.h"
#include "subknap/generate.hpp"
#include "subknap/oracle.hpp"
#include "unit/test_helpers.hpp"

namespace subknap {
namespace {

using testing::modular;
using testing::two_set_coverage;

TEST_CASE("coverage of two overlapping sets") {
  Objective f = two_set_coverage();
  CountingOracle oracle(f);
  std::vector<Element> ab = {0, 1};
  CHECK(oracle.value(ab) == 3.0);
  CHECK(oracle.value(std::vector<Element>{}) == 0.0);
  CHECK(oracle.query_count() == 2);
  oracle.reset_count();
  CHECK(oracle.query_count() == 0);
}

TEST_CASE("concave group with one element takes a square root") {
  ConcaveModular g;
  g.n = 1;
  g.groups.push_back({1.0, {{0, 4.0}}});
  Objective f(std::move(g));
  std::vector<Element> e = {0};
  CHECK(f.value(e) == 2.0);
}

TEST_CASE("facility location takes the best facility per customer") {
  FacilityLocation g;
  g.customers = 2;
  g.n = 3;
  g.similarity = {0.2, 0.9, 0.0,   //
                  0.5, 0.1, 0.4};
  Objective f(std::move(g));
  CHECK(f.value(std::vector<Element>{}) == 0.0);
  CHECK(f.value(std::vector<Element>{0}) == doctest::Approx(0.7));
  CHECK(f.value(std::vector<Element>{0, 1}) == doctest::Approx(1.4));
  CHECK(f.value(std::vector<Element>{1, 2}) == doctest::Approx(1.3));
}

TEST_CASE("out of range ids are rejected") {
  Objective f = two_set_coverage();
  CountingOracle oracle(f);
  CHECK_THROWS_AS(oracle.value(std::vector<Element>{2}), InputError);
  ObjectiveState s = f.empty_state();
  CHECK_THROWS_AS(oracle.gain(s, 5), InputError);
}

TEST_CASE("incremental gain matches the value difference") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    for (Family fam : {Family::kCoverage, Family::kFacility, Family::kConcaveModular}) {
      Instance inst = generate({.family = fam, .n = 10, .seed = seed});
      const Objective& f = inst.objective;
      ObjectiveState s = f.empty_state();
      std::vector<Element> set;
      for (Element e : {3u, 7u, 1u}) {
        for (Element probe = 0; probe < 10; ++probe) {
          std::vector<Element> plus = set;
          plus.push_back(probe);
          double direct = s.contains(probe) ? 0.0 : f.value(plus) - f.value(set);
          CHECK(testing::close(s.gain(probe), direct));
        }
        s.add(e);
        set.push_back(e);
        CHECK(testing::close(s.value(), f.value(set)));
      }
    }
  }
}

TEST_CASE("values are nonnegative and the empty set is worth zero") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    for (Family fam : {Family::kCoverage, Family::kFacility, Family::kConcaveModular}) {
      Instance inst = generate({.family = fam, .n = 9, .seed = seed});
      CHECK(inst.objective.value(std::vector<Element>{}) == 0.0);
      for (std::size_t mask = 0; mask < 512; mask += 37) {
        std::vector<Element> s;
        for (Element e = 0; e < 9; ++e) {
          if (mask >> e & 1U) s.push_back(e);
        }
        CHECK(inst.objective.value(s) >= 0.0);
      }
    }
  }
}

TEST_CASE("generated instances pass the exhaustive submodularity check") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 34; ++seed) {
    for (Family fam : {Family::kCoverage, Family::kFacility, Family::kConcaveModular}) {
      std::size_t n = 6 + seed % 7;  // 6..12
      Instance inst = generate({.family = fam, .n = n, .seed = seed, .integer_weights = seed % 2 == 1});
      SubmodularityCheck check = check_monotone_submodular(inst.objective);
      CHECK_MESSAGE(check.ok, inst.name);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("checker accepts coverage and modular functions") {
  CHECK(check_monotone_submodular(two_set_coverage()).ok);
  CHECK(check_monotone_submodular(modular({3.0, 2.0, 1.0})).ok);
}

TEST_CASE("checker reports a supermodular table with its witness") {
  // f({a,b}) - f({a}) = 3 > f({b}) - f({}) = 1.
  TabulatedFunction t{2, {0.0, 1.0, 1.0, 4.0}};
  SubmodularityCheck check = check_monotone_submodular(Objective(t));
  REQUIRE_FALSE(check.ok);
  REQUIRE(check.witness.has_value());
  const auto& w = *check.witness;
  CHECK(w.kind == SubmodularityWitness::Kind::kNotSubmodular);
  CHECK(w.smaller.empty());
  CHECK(w.larger.size() == 1);
  CHECK(w.gain_larger > w.gain_smaller);
  CHECK(w.gain_smaller == 1.0);
  CHECK(w.gain_larger == 3.0);
}

TEST_CASE("checker reports a decreasing table") {
  TabulatedFunction t{1, {0.0, -1.0}};
  SubmodularityCheck check = check_monotone_submodular(Objective(t));
  REQUIRE_FALSE(check.ok);
  CHECK(check.witness->kind == SubmodularityWitness::Kind::kNotMonotone);
}

TEST_CASE("checker refuses large ground sets") {
  Instance inst = generate({.family = Family::kCoverage, .n = 17, .seed = 1});
  CHECK_THROWS_AS(check_monotone_submodular(inst.objective), CapacityError);
}

TEST_CASE("counting oracle is transparent and counts one per evaluation") {
  Instance inst = generate({.family = Family::kFacility, .n = 12, .seed = 3});
  CountingOracle oracle(inst);
  std::vector<Element> s = {0, 4, 5, 11};
  CHECK(oracle.value(s) == inst.objective.value(s));
  CHECK(oracle.query_count() == 1);

  ObjectiveState state = oracle.state_of(s);
  CHECK(oracle.query_count() == 2);
  double g = oracle.gain(state, 2);
  CHECK(oracle.query_count() == 3);
  oracle.commit(state, 2);  // gain just queried: free
  CHECK(oracle.query_count() == 3);
  oracle.commit(state, 3);  // not queried: one evaluation
  CHECK(oracle.query_count() == 4);
  CHECK(oracle.gain(state, 2) == 0.0);  // member: no query
  CHECK(oracle.query_count() == 4);
  std::vector<Element> t = {0, 2, 4, 5, 11};
  CHECK(testing::close(g, inst.objective.value(t) - inst.objective.value(s)));
}

TEST_CASE("counter is safe under concurrent use") {
  Instance inst = generate({.family = Family::kCoverage, .n = 8, .seed = 2});
  CountingOracle oracle(inst);
  std::vector<std::thread> workers;
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&] {
      std::vector<Element> s = {1, 2};
      for (int i = 0; i < 500; ++i) oracle.value(s);
    });
  }
  for (auto& w : workers) w.join();
  CHECK(oracle.query_count() == 2000);
}

TEST_CASE("make_instance normalizes by capacity and drops oversized elements") {
  Objective f = modular({3.0, 2.0, 1.0, 5.0});
  Instance inst = make_instance({1.0, 2.5, 2.0, 1.5}, f, 2.0, "m");
  REQUIRE(inst.size() == 3);
  CHECK(inst.costs == std::vector<double>{0.5, 1.0, 0.75});
  CHECK(inst.original_ids == std::vector<std::int64_t>{0, 2, 3});
  CHECK(inst.objective.value(std::vector<Element>{2}) == 5.0);
  CHECK_THROWS_AS(make_instance({1.0, 0.0, 1.0, 1.0}, f), InputError);
  CHECK_THROWS_AS(make_instance({1.0, 1.0}, f), InputError);
  CHECK_THROWS_AS(make_instance({1.0, 1.0, 1.0, 1.0}, f, -1.0), InputError);
}

}  // namespace
}  // namespace subknap
