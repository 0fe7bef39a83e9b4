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

#include "subknap/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <utility>

namespace subknap {

void CheckOutcome::record(double lhs, double rhs, double tol, const std::string& where) {
  ++evaluated;
  const double slack = lhs - rhs;
  worst_slack = std::min(worst_slack, slack);
  if (!(slack >= -tol)) {
    if (ok) {
      std::ostringstream os;
      os.precision(17);
      os << where << ": lhs " << lhs << " < rhs " << rhs;
      witness = os.str();
    }
    ok = false;
  }
}

bool VerifyReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.ok; });
}

const CheckOutcome* VerifyReport::find(const std::string& name) const {
  for (const CheckOutcome& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

CheckOutcome named_check(const char* name) {
  CheckOutcome c;
  c.name = name;
  return c;
}

std::string at_phase(std::size_t p) { return "phase " + std::to_string(p); }

std::string at_step(std::size_t p, std::size_t i) {
  return at_phase(p) + " step " + std::to_string(i);
}

std::vector<double> sorted_costs(const Instance& instance, std::span<const Element> set) {
  std::vector<double> c;
  c.reserve(set.size());
  for (Element e : set) c.push_back(instance.costs[e]);
  std::sort(c.begin(), c.end());
  return c;
}

void check_opt1_stage(const Instance& instance, const CountingOracle& exact, const VerifyOptions& opt,
                      const VerifyReport& rep, const OptPartition& part, CheckOutcome& gain,
                      CheckOutcome& costs) {
  const double eps = rep.eps;
  const double M = rep.result.best_M.value_or(0.0);
  const double tol = opt.rel_tol * rep.opt_value;
  const auto& phases = rep.result.best_fractional->phases;
  const std::vector<double> o = sorted_costs(instance, part.opt1);
  MultilinearOptions ml{opt.k_max, nullptr};

  for (const PhaseTrace& ph : phases) {
    if (ph.repeated_selection) {
      ++gain.skipped;
    } else {
      // F(y_t) - F(y_0) >= eps (F(y_t v 1_OPT1) - F(y_t)) - eps^2 M
      const double with_opt1 = eval_exact(exact, ph.yt.join(part.opt1), ml);
      gain.record(ph.F_yt - ph.F_y0, eps * (with_opt1 - ph.F_yt) - eps * eps * M, tol,
                  at_phase(ph.p));
    }

    // Sorted costs of A_p against the |A_p| most expensive of OPT_1's sorted
    // costs; equal sizes give plain sorted domination.
    const std::vector<double> a = sorted_costs(instance, ph.A);
    if (a.size() > o.size()) {
      costs.record(static_cast<double>(o.size()), static_cast<double>(a.size()), 0.0,
                   at_phase(ph.p) + " |A| exceeds |OPT_1|");
      continue;
    }
    const std::size_t shift = o.size() - a.size();
    for (std::size_t j = 0; j < a.size(); ++j) {
      costs.record(o[shift + j], a[j], kFeasTol, at_phase(ph.p) + " rank " + std::to_string(j + 1));
    }
  }

  // Each choice against the OPT_1 element matched to it.
  if (!rep.result.analysis) return;
  for (std::size_t p = 0; p < rep.result.analysis->phases.size(); ++p) {
    for (const Opt1Record& rec : rep.result.analysis->phases[p].opt1) {
      if (!rec.chosen || !rec.matched) continue;
      costs.record(instance.costs[*rec.matched], instance.costs[*rec.chosen], kFeasTol,
                   at_step(p + 1, rec.i) + " matched pair");
    }
  }
}

void check_large_stage(const Instance& instance, const VerifyReport& rep, CheckOutcome& large) {
  if (!rep.result.analysis) return;
  const auto& phases = rep.result.best_fractional->phases;
  for (const PhaseTrace& ph : phases) {
    if (ph.large_skipped) {
      ++large.skipped;
      continue;
    }
    const AnalysisPhase& ap = rep.result.analysis->phases.at(ph.p - 1);
    // Records past r_p belong to the stopping query.
    for (std::size_t i = 1; i <= ph.r_p && i <= ap.large.size(); ++i) {
      const LargeRecord& rec = ap.large[i - 1];
      const std::string where = at_step(ph.p, i);
      if (!rec.chosen || !rec.matched) {
        large.record(0.0, 1.0, 0.0, where + " has no chosen/matched pair");
        continue;
      }
      large.record(instance.costs[*rec.matched], instance.costs[*rec.chosen], kFeasTol, where);
    }
  }
}

void check_phases(const Instance& instance, const VerifyOptions& opt, const VerifyReport& rep,
                  const OptPartition& part, CheckOutcome& budget, CheckOutcome& recursion,
                  CheckOutcome& discard, CheckOutcome& shadow) {
  const double eps = rep.eps;
  const double M = rep.result.best_M.value_or(0.0);
  const double tol = opt.rel_tol * rep.opt_value;
  const double n = static_cast<double>(rep.n);
  const double discard_cap = (eps / n) * (eps / n) * rep.opt_value;
  for (const PhaseTrace& ph : rep.result.best_fractional->phases) {
    const double spent = instance.cost(ph.B) + instance.cost(ph.C);
    budget.record(eps * (1.0 - part.opt1_cost), spent, kFeasTol, at_phase(ph.p));

    recursion.record(ph.F_x - ph.F_y0,
                     eps * (1.0 - 12.0 * eps) * (rep.opt_value - ph.F_x) - 2.0 * eps * eps * M, tol,
                     at_phase(ph.p));

    if (!ph.density.ran) continue;
    shadow.record(ph.density.min_shadow_ratio, 1.0 - eps, kRelTol, at_phase(ph.p));
    for (const DiscardRecord& d : ph.density.discarded) {
      if (!std::isfinite(d.final_gain)) {
        ++discard.skipped;
        continue;
      }
      discard.record(discard_cap, d.final_gain, tol,
                     at_phase(ph.p) + " element " + std::to_string(d.element));
    }
  }
}

RoundingStats rounding_stats(const Instance& instance, const CountingOracle& exact,
                             const VerifyOptions& opt, const SparseFractionalPoint& x,
                             const OptPartition& part) {
  RoundingStats st;
  st.trials = std::max<std::size_t>(1, opt.rounding_trials);
  for (auto [e, v] : x.fractional()) st.mass += v;
  st.mass_integral = std::abs(st.mass - std::round(st.mass)) <= 1e-9;
  st.F_x = eval_exact(exact, x, MultilinearOptions{opt.k_max, nullptr});
  st.grouping = check_grouping_invariant(x, instance.costs, sorted_costs(instance, part.opt1));

  std::map<Element, std::size_t> hits;
  double sum = 0.0;
  double sum_sq = 0.0;
  const CounterRng root(opt.seed, 0x726f756e64ULL);
  for (std::size_t k = 0; k < st.trials; ++k) {
    CounterRng rng = root.split(k);
    RoundingTranscript tr = round_point(x, instance.costs, rng);
    for (Element e : tr.final_set) ++hits[e];
    const double value = exact.value(tr.final_set);
    sum += value;
    sum_sq += value * value;
    double up_cost = 0.0;
    for (Element e : tr.rounded_up) up_cost += instance.costs[e];
    st.max_rounded_up_cost = std::max(st.max_rounded_up_cost, up_cost);
    const double path_cost = instance.cost(tr.final_set);
    st.max_path_cost = std::max(st.max_path_cost, path_cost);
    if (!within_budget(path_cost)) ++st.infeasible_paths;
  }
  const double N = static_cast<double>(st.trials);
  st.mean_value = sum / N;
  const double var = std::max(0.0, sum_sq / N - st.mean_value * st.mean_value);
  st.std_error = st.trials > 1 ? std::sqrt(var * N / (N - 1.0) / N) : 0.0;
  for (auto [e, v] : x.fractional()) {
    const double freq = static_cast<double>(hits[e]) / N;
    const double sd = std::sqrt(v * (1.0 - v) / N);
    st.worst_frequency_z = std::max(st.worst_frequency_z, std::abs(freq - v) / sd);
  }
  return st;
}

}  // namespace

VerifyReport verify_instance(const Instance& instance, const VerifyOptions& options) {
  if (instance.size() > kVerifyMaxN) {
    throw CapacityError("verify needs brute-force OPT: n = " + std::to_string(instance.size()) +
                        " exceeds " + std::to_string(kVerifyMaxN));
  }
  VerifyReport rep;
  rep.instance = instance.name;
  rep.n = instance.size();
  rep.eps = options.eps;

  KnapsackParams params;
  params.eps = options.eps;
  params.t = options.t;
  params.r = options.r;
  params.phases = options.phases;
  params.k_max = options.k_max;
  params.mode = GuessMode::kAnalysisGuided;
  params.seed = options.seed;
  params.shadow_check = true;

  CountingOracle oracle(instance);
  rep.result = knapsack(oracle, instance, params);

  // Separate oracle so the checks do not disturb the run's query count.
  CountingOracle exact(instance);
  CheckOutcome opt1_gain = named_check("opt1_gain");
  CheckOutcome opt1_costs = named_check("opt1_costs");
  CheckOutcome large_costs = named_check("large_costs");
  CheckOutcome phase_budget = named_check("phase_budget");
  CheckOutcome phase_recursion = named_check("phase_recursion");
  CheckOutcome discard_bound = named_check("discard_bound");
  CheckOutcome density_shadow = named_check("density_shadow");
  CheckOutcome rounding_frequency = named_check("rounding_frequency");
  CheckOutcome rounding_value = named_check("rounding_value");
  CheckOutcome rounding_cost = named_check("rounding_cost");
  CheckOutcome feasibility = named_check("feasibility");

  feasibility.record(1.0 + kFeasTol, rep.result.cost, 0.0, "returned set");

  if (rep.result.partition && rep.result.best_fractional) {
    const OptPartition& part = *rep.result.partition;
    rep.opt_value = part.opt_value;
    rep.opt_set = part.opt_set;
    rep.grid = make_grid(params, rep.result.best_M.value_or(0.0));
    for (const PhaseTrace& ph : rep.result.best_fractional->phases) {
      if (ph.repeated_selection) ++rep.flagged_phases;
      if (ph.large_skipped) ++rep.large_skips;
      for (const StepRecord& s : ph.opt1_steps) {
        if (s.skipped) ++rep.opt1_skips;
      }
    }
    check_opt1_stage(instance, exact, options, rep, part, opt1_gain, opt1_costs);
    check_large_stage(instance, rep, large_costs);
    check_phases(instance, options, rep, part, phase_budget, phase_recursion, discard_bound,
                 density_shadow);

    RoundingStats st =
        rounding_stats(instance, exact, options, rep.result.best_fractional->x, part);
    if (st.mass_integral) {
      rounding_frequency.record(4.0, st.worst_frequency_z, 0.0, "worst coordinate");
    } else {
      ++rounding_frequency.skipped;
    }
    rounding_value.record(st.mean_value, st.F_x - 4.0 * st.std_error,
                          options.rel_tol * std::max(1.0, rep.opt_value), "sample mean");
    if (st.grouping.ok) {
      rounding_cost.record(part.opt1_cost, st.max_rounded_up_cost, kFeasTol, "worst sample path");
    } else {
      ++rounding_cost.skipped;
    }
    rep.rounding = st;
  } else {
    // Nothing of positive value fits; the empty set is optimal.
    BaselineResult opt = brute_force_opt(exact, instance);
    rep.opt_value = opt.value;
    rep.opt_set = opt.set;
  }

  rep.checks = {opt1_gain,      opt1_costs,         large_costs,    phase_budget,
                phase_recursion, discard_bound,     density_shadow, rounding_frequency,
                rounding_value, rounding_cost,      feasibility};
  return rep;
}

}  // namespace subknap
