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

#include "subknap/knapsack.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace subknap {

namespace {

// Grid thinning that keeps 0, a middle point and the top of a grid.
std::int64_t three_point_stride(std::int64_t max_multiplier) {
  return std::max<std::int64_t>(1, (max_multiplier + 1) / 2);
}

// Elements by (cost, id), so the first qualifying one has minimum cost.
std::vector<Element> by_cost(std::span<const double> costs) {
  std::vector<Element> order(costs.size());
  std::iota(order.begin(), order.end(), Element{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Element a, Element b) { return costs[a] < costs[b]; });
  return order;
}

}  // namespace

GuessMode parse_mode(std::string_view name) {
  if (name == "enumerate") return GuessMode::kEnumerate;
  if (name == "practical") return GuessMode::kPractical;
  if (name == "analysis") return GuessMode::kAnalysisGuided;
  throw InputError("unknown mode '" + std::string(name) + "' (enumerate, practical, analysis)");
}

std::string_view mode_name(GuessMode mode) {
  switch (mode) {
    case GuessMode::kEnumerate:
      return "enumerate";
    case GuessMode::kPractical:
      return "practical";
    case GuessMode::kAnalysisGuided:
      return "analysis";
  }
  return "unknown";
}

GuessGrid make_grid(const KnapsackParams& params, double M) {
  GuessGrid grid = GuessGrid::defaults(params.eps, M);
  if (params.mode == GuessMode::kPractical) {
    grid.t = grid.r = grid.phases = 1;
  }
  if (params.t) grid.t = *params.t;
  if (params.r) grid.r = *params.r;
  if (params.phases) grid.phases = *params.phases;
  if (params.mode == GuessMode::kPractical) {
    grid.v_stride = params.v_stride > 0 ? params.v_stride : three_point_stride(grid.v_max());
    grid.W_stride = params.W_stride > 0 ? params.W_stride : three_point_stride(grid.W_max());
    GridValue top{grid.W_max(), grid.W_step()};
    grid.w_stride = params.w_stride > 0 ? params.w_stride : three_point_stride(grid.w_max(top));
  } else {
    if (params.v_stride > 0) grid.v_stride = params.v_stride;
    if (params.W_stride > 0) grid.W_stride = params.W_stride;
    if (params.w_stride > 0) grid.w_stride = params.w_stride;
  }
  grid.validate();
  return grid;
}

FractionalOutcome knapsack_guess(const CountingOracle& oracle, const Instance& instance,
                                 GuessSupplier& guesses, const GuessGrid& grid,
                                 const EngineOptions& options) {
  grid.validate();
  const std::size_t n = instance.size();
  const double eps = grid.eps;
  // Only the OPT_1 stage creates fractional entries.
  const std::size_t worst_support = std::min(grid.t * grid.phases, n);
  if (worst_support > options.k_max) {
    throw CapacityError("up to " + std::to_string(worst_support) +
                        " fractional entries may arise, above k_max = " +
                        std::to_string(options.k_max));
  }
  const std::uint64_t start_queries = oracle.query_count();
  const std::span<const double> costs = instance.costs;
  const std::vector<Element> cheap_first = by_cost(costs);
  const double rdouble = static_cast<double>(grid.r);

  MultilinearState state(oracle, SparseFractionalPoint{}, options.k_max);
  FractionalOutcome out;

  for (std::size_t p = 1; p <= grid.phases; ++p) {
    PhaseTrace ph;
    ph.p = p;
    ph.y0 = state.point();
    ph.F_y0 = state.value();

    for (std::size_t i = 1; i <= grid.t; ++i) {
      StepRecord step;
      step.i = i;
      step.threshold = guesses.opt1_threshold(p, i, state);
      if (step.threshold) {
        const double v = step.threshold->value();
        for (Element e : cheap_first) {
          if (std::find(ph.A.begin(), ph.A.end(), e) != ph.A.end()) continue;
          if (state.coordinate(e) == 1.0) continue;
          if (at_least(state.gain(oracle, e), v)) {
            step.chosen = e;
            break;
          }
        }
      }
      if (step.chosen) {
        const Element e = *step.chosen;
        step.coordinate_before = state.coordinate(e);
        step.repeated = step.coordinate_before > 0.0;
        ph.repeated_selection = ph.repeated_selection || step.repeated;
        state.increase(oracle, e, std::min(eps, 1.0 - step.coordinate_before));
        ph.A.push_back(e);
      } else {
        step.skipped = true;
      }
      guesses.opt1_selected(p, i, step.chosen);
      ph.opt1_steps.push_back(step);
    }
    ph.yt = state.point();
    ph.F_yt = state.value();
    ph.W = guesses.phase_target(p, state);

    if (ph.W.multiplier <= 0) {
      ph.large_skipped = true;
    } else {
      const double W = ph.W.value();
      const double phase_goal = eps * (1.0 - 12.0 * eps) * W;
      const double stop_below = eps * (1.0 - eps) * W / rdouble;
      ph.F_z.push_back(ph.F_yt);
      ph.r_p = grid.r;
      for (std::size_t i = 1; i <= grid.r; ++i) {
        GridValue w = guesses.large_threshold(p, i, state);
        if (w.value() <= stop_below) {
          ph.r_p = i - 1;
          guesses.large_selected(p, i, std::nullopt);
          break;
        }
        StepRecord step;
        step.i = i;
        step.threshold = w;
        // No exclusion here: an element already at 1 has zero gain and can
        // only qualify for a zero threshold, which the r_p rule rules out.
        for (Element e : cheap_first) {
          if (at_least(state.gain(oracle, e), w.value())) {
            step.chosen = e;
            break;
          }
        }
        if (step.chosen) {
          step.coordinate_before = state.coordinate(*step.chosen);
          step.repeated = step.coordinate_before > 0.0;
          step.no_op = step.coordinate_before == 1.0;
          state.join(oracle, *step.chosen);
          ph.B.push_back(*step.chosen);
        } else {
          step.skipped = true;
        }
        guesses.large_selected(p, i, step.chosen);
        ph.large_steps.push_back(step);
        ph.F_z.push_back(state.value());
        if (at_least(state.value() - ph.F_yt, phase_goal)) {
          ph.ended_early = true;
          break;
        }
      }

      const double collected = state.value() - ph.F_yt;
      if (!ph.ended_early && collected < phase_goal) {
        DensityStageRecord& ds = ph.density;
        ds.ran = true;
        ds.target = phase_goal - collected;
        const double too_large = eps * W / rdouble;
        std::vector<Element> candidates;
        for (Element e = 0; e < n; ++e) {
          if (state.coordinate(e) == 1.0) continue;
          if (at_least(state.gain(oracle, e), too_large)) {
            ++ds.filtered_out;
          } else {
            candidates.push_back(e);
          }
        }
        LazyGreedyOptions lg;
        lg.shadow_check = options.shadow_check;
        lg.record_transcript = false;
        LazyGreedyResult res =
            lazy_density_greedy(oracle, costs, state, ds.target, candidates, eps, n, lg);
        ds.selected = res.selected;
        ds.discarded = std::move(res.discarded);
        ds.min_shadow_ratio = res.min_shadow_ratio;
        ds.reached_target = res.reached_target;
        ph.C = std::move(res.selected);
      }
    }
    ph.x = state.point();
    ph.F_x = state.value();
    out.phases.push_back(std::move(ph));
  }
  out.x = state.point();
  out.value = state.value();
  out.queries = oracle.query_count() - start_queries;
  return out;
}

std::vector<double> estimate_M(const CountingOracle& oracle, const Instance& instance, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (instance.size() == 0) return {};
  BaselineResult base = density_greedy_baseline(oracle, instance, std::min(eps, 0.1));
  if (!(base.value > 0.0)) return {};
  const auto steps = static_cast<int>(std::ceil(std::log(4.0) / std::log1p(eps) - 1e-9));
  std::vector<double> Ms;
  for (int j = 0; j <= steps; ++j) Ms.push_back(base.value * std::pow(1.0 + eps, j));
  return Ms;
}

namespace {

struct Best {
  std::vector<Element> set;
  double value = 0.0;
  bool found = false;
  std::optional<double> M;
  std::optional<FractionalOutcome> fractional;
  std::optional<RoundingTranscript> rounding;
};

// Rounds one fractional outcome several times and keeps any improvement.
void consider(const CountingOracle& oracle, const Instance& instance, const KnapsackParams& params,
              double M, const FractionalOutcome& outcome, std::uint64_t run, Best& best,
              KnapsackResult& result) {
  const CounterRng root(params.seed);
  const std::size_t trials = std::max<std::size_t>(1, params.rounding_trials);
  for (std::size_t k = 0; k < trials; ++k) {
    CounterRng rng = root.split(run * trials + k);
    RoundingTranscript tr = round_point(outcome.x, instance.costs, rng);
    if (!within_budget(instance.cost(tr.final_set))) {
      ++result.infeasible_discarded;
      continue;
    }
    double value = oracle.value(tr.final_set);
    if (!best.found || value > best.value) {
      best.found = true;
      best.value = value;
      best.set = tr.final_set;
      best.M = M;
      best.fractional = outcome;
      best.rounding = std::move(tr);
    }
    // An integral point rounds to itself.
    if (outcome.x.is_integral()) break;
  }
}

}  // namespace

KnapsackResult knapsack(const CountingOracle& oracle, const Instance& instance,
                        const KnapsackParams& params) {
  if (!(params.eps > 0.0 && params.eps < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  const std::uint64_t start_queries = oracle.query_count();
  KnapsackResult result;
  result.source = "empty";
  if (instance.size() == 0) return result;

  const double lazy_eps = std::min(params.eps, 0.1);
  BaselineResult baseline = density_greedy_baseline(oracle, instance, lazy_eps);
  result.baseline_value = baseline.value;
  std::vector<double> Ms = estimate_M(oracle, instance, params.eps);
  EngineOptions engine{params.k_max, params.shadow_check};
  Best best;

  if (params.mode == GuessMode::kAnalysisGuided) {
    BaselineResult opt = brute_force_opt(oracle, instance);
    if (opt.value > 0.0 && !Ms.empty()) {
      double M = Ms.front();
      for (double m : Ms) {
        if (m <= opt.value * (1.0 + kRelTol)) M = m;
      }
      result.M_candidates = 1;
      GuessGrid grid = make_grid(params, M);
      std::vector<Element> order = greedy_order_opt(oracle, opt.set);
      OptPartition part = partition_opt(oracle, instance.costs, order, params.eps, grid.t);
      AnalysisGuesser guesser(instance.objective, instance.costs, part, grid);
      FractionalOutcome outcome = knapsack_guess(oracle, instance, guesser, grid, engine);
      ++result.runs;
      consider(oracle, instance, params, M, outcome, 0, best, result);
      result.partition = guesser.partition();
      result.analysis = guesser.trace();
      if (!best.fractional) {
        result.best_fractional = std::move(outcome);
        result.best_M = M;
      }
    }
  } else {
    result.M_candidates = Ms.size();
    std::uint64_t run = 0;
    for (double M : Ms) {
      GuessGrid grid = make_grid(params, M);
      GuessEnumerator sequences(grid, params.limit);
      GuessSequence seq;
      while (sequences.next(seq)) {
        FixedGuesser guesser(seq);
        FractionalOutcome outcome = knapsack_guess(oracle, instance, guesser, grid, engine);
        consider(oracle, instance, params, M, outcome, run++, best, result);
      }
    }
    result.runs = run;
  }

  if (best.found) {
    result.best_run_value = best.value;
    result.best_M = best.M;
    result.best_fractional = std::move(best.fractional);
    result.best_rounding = std::move(best.rounding);
  }
  if (best.found && best.value >= baseline.value) {
    result.set = std::move(best.set);
    result.value = best.value;
    result.source = "knapsack";
  } else {
    result.set = baseline.set;
    result.value = baseline.value;
    result.source = baseline.algorithm;
  }
  std::sort(result.set.begin(), result.set.end());
  result.cost = instance.cost(result.set);
  result.queries = oracle.query_count() - start_queries;
  return result;
}

}  // namespace subknap
