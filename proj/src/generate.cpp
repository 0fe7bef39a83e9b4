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

#include "subknap/generate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subknap/rng.hpp"

namespace subknap {

namespace {

std::size_t below(CounterRng& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng.uniform() * static_cast<double>(bound));
}

double draw_weight(CounterRng& rng, bool integer, double lo, double hi) {
  if (integer) return static_cast<double>(1 + below(rng, 5));
  return lo + (hi - lo) * rng.uniform();
}

Objective make_coverage(const GenParams& p, CounterRng& rng) {
  WeightedCoverage f;
  std::size_t universe = p.universe != 0 ? p.universe : std::max<std::size_t>(8, 2 * p.n);
  std::size_t cover_size = p.cover_size != 0 ? p.cover_size : 6;
  for (std::size_t u = 0; u < universe; ++u) {
    f.universe_weights.push_back(draw_weight(rng, p.integer_weights, 0.5, 1.5));
  }
  f.covers.resize(p.n);
  for (auto& cover : f.covers) {
    std::size_t k = 1 + below(rng, cover_size);
    for (std::size_t j = 0; j < k; ++j) cover.push_back(static_cast<std::uint32_t>(below(rng, universe)));
  }
  return Objective(std::move(f));
}

Objective make_facility(const GenParams& p, CounterRng& rng) {
  FacilityLocation f;
  f.customers = p.customers != 0 ? p.customers : std::max<std::size_t>(4, p.n / 2);
  f.n = p.n;
  f.similarity.resize(f.customers * f.n);
  for (double& s : f.similarity) {
    // Roughly half the pairs are unrelated.
    if (rng.uniform() < 0.5) {
      s = 0.0;
    } else {
      s = p.integer_weights ? static_cast<double>(below(rng, 6)) : rng.uniform();
    }
  }
  return Objective(std::move(f));
}

Objective make_concave(const GenParams& p, CounterRng& rng) {
  ConcaveModular f;
  f.n = p.n;
  std::size_t groups = p.groups != 0 ? p.groups : std::max<std::size_t>(2, p.n / 3);
  f.groups.resize(groups);
  for (auto& g : f.groups) g.scale = draw_weight(rng, p.integer_weights, 0.5, 1.5);
  for (std::size_t e = 0; e < p.n; ++e) {
    std::size_t k = 1 + below(rng, 2);
    for (std::size_t j = 0; j < k; ++j) {
      auto& g = f.groups[below(rng, groups)];
      g.weights.emplace_back(static_cast<Element>(e), draw_weight(rng, p.integer_weights, 0.1, 2.0));
    }
  }
  return Objective(std::move(f));
}

}  // namespace

Family parse_family(std::string_view name) {
  if (name == "coverage") return Family::kCoverage;
  if (name == "facility") return Family::kFacility;
  if (name == "concave_modular") return Family::kConcaveModular;
  throw InputError("unknown objective family '" + std::string(name) + "'");
}

std::string_view family_name(Family family) {
  switch (family) {
    case Family::kCoverage:
      return "coverage";
    case Family::kFacility:
      return "facility";
    case Family::kConcaveModular:
      return "concave_modular";
  }
  return "coverage";
}

Instance generate(const GenParams& p) {
  if (p.n == 0) throw InputError("generate: n must be >= 1");
  if (!(p.cost_max > 0.0) || p.cost_max > 1.0) throw InputError("generate: cost_max must lie in (0, 1]");
  if (p.noise < 0.0 || p.noise > 1.0) throw InputError("generate: noise must lie in [0, 1]");
  CounterRng rng(p.seed, static_cast<std::uint64_t>(p.family));
  Objective objective = p.family == Family::kCoverage   ? make_coverage(p, rng)
                        : p.family == Family::kFacility ? make_facility(p, rng)
                                                        : make_concave(p, rng);
  std::vector<double> costs(p.n);
  if (p.adversarial) {
    std::vector<double> singles(p.n);
    double top = 0.0;
    for (std::size_t e = 0; e < p.n; ++e) {
      Element id = static_cast<Element>(e);
      singles[e] = objective.value(std::span<const Element>(&id, 1));
      top = std::max(top, singles[e]);
    }
    for (std::size_t e = 0; e < p.n; ++e) {
      double share = top > 0.0 ? singles[e] / top : 1.0;
      double mix = (1.0 - p.noise) * share + p.noise * (1.0 - rng.uniform());
      costs[e] = p.cost_max * std::clamp(mix, 1e-3, 1.0);
    }
  } else {
    for (double& c : costs) c = p.cost_max * (1.0 - rng.uniform());
  }
  std::string name = std::string(family_name(p.family)) + "_n" + std::to_string(p.n) + "_s" +
                     std::to_string(p.seed);
  return make_instance(std::move(costs), objective, 1.0, std::move(name));
}

}  // namespace subknap
