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

#include "subknap/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>

#include "subknap/baselines.hpp"
#include "subknap/lazy_greedy.hpp"

namespace subknap {

namespace {

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

double spread(const std::vector<ScalingRow>& rows, std::string_view algorithm) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const ScalingRow& r : rows) {
    if (r.algorithm != algorithm) continue;
    lo = std::min(lo, r.normalized);
    hi = std::max(hi, r.normalized);
  }
  return hi > 0.0 ? hi / lo : 0.0;
}

}  // namespace

RunRow run_algorithm(const Instance& instance, std::string_view algorithm,
                     const KnapsackParams& params) {
  RunRow row;
  row.instance = instance.name;
  row.algorithm = std::string(algorithm);
  row.n = instance.size();
  row.eps = params.eps;
  CountingOracle oracle(instance);
  const auto start = std::chrono::steady_clock::now();
  if (algorithm == "knapsack") {
    KnapsackResult r = knapsack(oracle, instance, params);
    row.set = r.set;
    row.value = r.value;
    row.knapsack = std::move(r);
  } else {
    BaselineResult r;
    if (algorithm == "density") {
      r = density_greedy_baseline(oracle, instance, std::min(params.eps, 0.1));
    } else if (algorithm == "sviridenko") {
      r = sviridenko(oracle, instance);
    } else if (algorithm == "brute") {
      r = brute_force_opt(oracle, instance);
    } else {
      throw InputError("unknown algorithm '" + std::string(algorithm) +
                       "' (knapsack, density, sviridenko, brute)");
    }
    row.set = r.set;
    row.value = r.value;
  }
  row.millis =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  row.cost = instance.cost(row.set);
  row.queries = oracle.query_count();
  return row;
}

std::string_view csv_header() { return "instance,algorithm,n,epsilon,value,cost,queries,millis,ratio_opt"; }

std::string csv_row(const RunRow& row) {
  std::string s = csv_field(row.instance);
  s += ',' + row.algorithm;
  s += ',' + std::to_string(row.n);
  s += ',' + format_number(row.eps);
  s += ',' + format_number(row.value);
  s += ',' + format_number(row.cost);
  s += ',' + std::to_string(row.queries);
  s += ',' + format_number(row.millis);
  s += ',';
  if (row.ratio_opt) s += format_number(*row.ratio_opt);
  return s;
}

ScalingReport run_scaling(Family family, std::span<const std::size_t> ns, double eps,
                          std::uint64_t seed) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (!std::is_sorted(ns.begin(), ns.end())) throw InputError("n values must be ascending");
  ScalingReport rep;
  std::uint64_t last_lazy = 0;
  for (std::size_t n : ns) {
    if (n < 2) throw InputError("scaling needs n >= 2");
    GenParams gp;
    gp.family = family;
    gp.n = n;
    gp.seed = seed;
    Instance inst = generate(gp);
    const double scale = static_cast<double>(n) * std::log(static_cast<double>(n) / eps);

    {
      CountingOracle oracle(inst);
      std::vector<Element> all(inst.size());
      std::iota(all.begin(), all.end(), Element{0});
      LazyGreedyOptions lg;
      lg.record_transcript = false;
      lazy_density_greedy(oracle, inst.costs, SparseFractionalPoint{},
                          std::numeric_limits<double>::infinity(), all, eps, inst.size(), lg);
      const std::uint64_t q = oracle.query_count();
      rep.rows.push_back({n, "lazy_greedy", q, static_cast<double>(q) / scale});
      if (q <= last_lazy) rep.lazy_increasing = false;
      last_lazy = q;
    }
    {
      CountingOracle oracle(inst);
      std::vector<double> Ms = estimate_M(oracle, inst, eps);
      if (Ms.empty()) continue;
      GuessGrid grid = GuessGrid::defaults(eps, Ms.front());
      grid.t = grid.r = grid.phases = 1;
      GuessSequence seq;
      seq.v = {{GridValue{0, grid.v_step()}}};
      const GridValue W{grid.W_max(), grid.W_step()};
      seq.W = {W};
      seq.w = {{GridValue{grid.w_max(W), grid.w_step(W)}, GridValue{0, grid.w_step(W)}}};
      FixedGuesser guesser(seq);
      oracle.reset_count();
      FractionalOutcome out = knapsack_guess(oracle, inst, guesser, grid);
      rep.rows.push_back({n, "knapsack_phase", out.queries, static_cast<double>(out.queries) / scale});
    }
  }
  rep.lazy_spread = spread(rep.rows, "lazy_greedy");
  rep.phase_spread = spread(rep.rows, "knapsack_phase");
  return rep;
}

}  // namespace subknap
