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

#include <bit>
#include <cmath>
#include <string>

#include "doctest.h"
#include "subknap/generate.hpp"
#include "subknap/verify.hpp"
#include "unit/test_helpers.hpp"

namespace subknap {
namespace {

Instance random_instance(Family family, std::size_t n, std::uint64_t seed, double cost_max) {
  GenParams p;
  p.family = family;
  p.n = n;
  p.seed = seed;
  p.cost_max = cost_max;
  return generate(p);
}

VerifyOptions options_for(double eps, std::size_t n) {
  VerifyOptions o;
  o.eps = eps;
  const auto inv = static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-9));
  o.t = std::min(inv * inv * inv, n);
  o.r = inv;
  o.phases = inv;
  o.rounding_trials = 2000;
  return o;
}

TEST_CASE("check outcome keeps the worst slack and the first witness") {
  CheckOutcome c;
  c.name = "demo";
  c.record(1.0, 0.5, 0.0, "a");
  CHECK(c.ok);
  CHECK(c.worst_slack == doctest::Approx(0.5));
  c.record(1.0, 1.0 + 1e-12, 1e-9, "b");
  CHECK(c.ok);
  c.record(1.0, 2.0, 1e-9, "c");
  c.record(1.0, 3.0, 1e-9, "d");
  CHECK_FALSE(c.ok);
  CHECK(c.evaluated == 4);
  CHECK(c.worst_slack == doctest::Approx(-2.0));
  CHECK(c.witness.rfind("c:", 0) == 0);
}

TEST_CASE("verify passes on random instances of every family") {
  const Family families[] = {Family::kCoverage, Family::kFacility, Family::kConcaveModular};
  for (std::uint64_t seed = 0; seed < 9; ++seed) {
    const double eps = seed % 2 == 0 ? 0.5 : 1.0 / 3.0;
    const std::size_t n = 8 + seed % 5;
    // Cheap costs leave room for a large OPT, so OPT_2 is not empty at eps = 1/2.
    Instance inst = random_instance(families[seed % 3], n, 300 + seed, seed % 2 == 0 ? 0.15 : 0.45);
    VerifyReport rep = verify_instance(inst, options_for(eps, n));
    CAPTURE(seed);
    for (const CheckOutcome& c : rep.checks) {
      CAPTURE(c.name);
      CAPTURE(c.witness);
      CHECK(c.ok);
    }
    CHECK(rep.ok());
    CHECK(rep.opt_value > 0.0);
    REQUIRE(rep.rounding.has_value());
    CHECK(rep.rounding->trials == 2000);
    CHECK(rep.find("phase_recursion")->evaluated == rep.grid.phases);
    CHECK(rep.find("opt1_costs")->evaluated > 0);
    CHECK(within_budget(rep.result.cost));
    CHECK(rep.result.source.size() > 0);
  }
  VerifyReport any = verify_instance(random_instance(Family::kCoverage, 8, 1, 0.3), options_for(0.5, 8));
  CHECK(any.find("no_such_check") == nullptr);
}

TEST_CASE("a short OPT_1 stage leaves room for the large-value stage") {
  // With t = 2 the OPT_2 marginal often reaches the eps * M grid, so W_p > 0.
  std::size_t large_evaluated = 0;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 8 + seed % 7;
    Instance inst = random_instance(static_cast<Family>(seed % 3), n, seed, 0.3);
    VerifyOptions o = options_for(0.5, n);
    o.t = 2;
    o.rounding_trials = 200;
    VerifyReport rep = verify_instance(inst, o);
    CAPTURE(seed);
    for (const CheckOutcome& c : rep.checks) {
      CAPTURE(c.name);
      CAPTURE(c.witness);
      CHECK(c.ok);
    }
    CHECK(rep.find("phase_budget")->evaluated == 2);
    CHECK(rep.find("feasibility")->evaluated == 1);
    large_evaluated += rep.find("large_costs")->evaluated;
  }
  CHECK(large_evaluated >= 5);
}

TEST_CASE("verify reports a violation on a supermodular objective") {
  // f(S) = |S|^2. Rounding fixes |R| to the integral mass, so E f(R) = mass^2,
  // below F(x) = mass^2 + variance.
  TabulatedFunction t;
  t.n = 8;
  for (std::size_t mask = 0; mask < 256; ++mask) {
    const auto k = static_cast<double>(std::popcount(mask));
    t.values.push_back(k * k);
  }
  Instance inst = make_instance(std::vector<double>(8, 0.12), Objective(t));
  // One phase leaves every coordinate at 1/2.
  VerifyOptions o = options_for(0.5, 8);
  o.phases = 1;
  VerifyReport rep = verify_instance(inst, o);
  CHECK_FALSE(rep.ok());
  const CheckOutcome* value = rep.find("rounding_value");
  REQUIRE(value != nullptr);
  CHECK_FALSE(value->ok);
  CHECK_FALSE(value->witness.empty());
  CHECK(rep.find("feasibility")->ok);
}

TEST_CASE("verify refuses instances too large for brute force") {
  Instance big = random_instance(Family::kCoverage, 17, 1, 0.3);
  CHECK_THROWS_AS(verify_instance(big, VerifyOptions{}), CapacityError);
}

TEST_CASE("verify on an instance with nothing of value") {
  Instance inst = make_instance({0.5, 0.5}, testing::modular({0.0, 0.0}));
  VerifyReport rep = verify_instance(inst, options_for(0.5, 2));
  CHECK(rep.ok());
  CHECK(rep.opt_value == 0.0);
  CHECK_FALSE(rep.rounding.has_value());
}

}  // namespace
}  // namespace subknap
