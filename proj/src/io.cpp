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

#include "subknap/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <variant>

namespace subknap {

namespace {

Objective objective_from_json(const Json& o, std::size_t n) {
  const std::string type = o.at("type").get<std::string>();
  if (type == "coverage") {
    WeightedCoverage f;
    f.universe_weights = o.at("universe_weights").get<std::vector<double>>();
    f.covers = o.at("covers").get<std::vector<std::vector<std::uint32_t>>>();
    if (f.covers.size() != n) throw InputError("coverage: covers must have n entries");
    return Objective(std::move(f));
  }
  if (type == "facility") {
    FacilityLocation f;
    f.customers = o.at("customers").get<std::size_t>();
    f.n = n;
    const auto rows = o.at("similarity").get<std::vector<std::vector<double>>>();
    if (rows.size() != f.customers) throw InputError("facility: similarity needs one row per customer");
    for (const auto& row : rows) {
      if (row.size() != n) throw InputError("facility: similarity rows must have n entries");
      f.similarity.insert(f.similarity.end(), row.begin(), row.end());
    }
    return Objective(std::move(f));
  }
  if (type == "concave_modular") {
    ConcaveModular f;
    f.n = n;
    for (const Json& g : o.at("groups")) {
      ConcaveModular::Group grp;
      grp.scale = g.at("scale").get<double>();
      for (const Json& w : g.at("weights")) {
        if (!w.is_array() || w.size() != 2) throw InputError("concave_modular: weights are [id, w] pairs");
        grp.weights.emplace_back(w[0].get<Element>(), w[1].get<double>());
      }
      f.groups.push_back(std::move(grp));
    }
    return Objective(std::move(f));
  }
  if (type == "table") {
    // Test hook for arbitrary set functions; values[mask] = f(S).
    if (n > 20) throw InputError("table: at most 20 elements");
    TabulatedFunction f;
    f.n = n;
    f.values = o.at("values").get<std::vector<double>>();
    if (f.values.size() != (std::size_t{1} << n)) throw InputError("table: values must have 2^n entries");
    return Objective(std::move(f));
  }
  throw InputError("unknown objective type '" + type + "' (coverage, facility, concave_modular, table)");
}

Json objective_to_json(const Objective& objective) {
  Json o;
  o["type"] = std::string(objective.type_name());
  std::visit(
      [&](const auto& f) {
        using F = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<F, WeightedCoverage>) {
          o["universe_weights"] = f.universe_weights;
          o["covers"] = f.covers;
        } else if constexpr (std::is_same_v<F, FacilityLocation>) {
          o["customers"] = f.customers;
          Json rows = Json::array();
          for (std::size_t u = 0; u < f.customers; ++u) {
            rows.push_back(std::vector<double>(f.similarity.begin() + static_cast<std::ptrdiff_t>(u * f.n),
                                               f.similarity.begin() + static_cast<std::ptrdiff_t>((u + 1) * f.n)));
          }
          o["similarity"] = std::move(rows);
        } else if constexpr (std::is_same_v<F, ConcaveModular>) {
          Json groups = Json::array();
          for (const auto& g : f.groups) {
            Json weights = Json::array();
            for (auto [e, w] : g.weights) weights.push_back(Json::array({e, w}));
            groups.push_back(Json{{"scale", g.scale}, {"weights", std::move(weights)}});
          }
          o["groups"] = std::move(groups);
        } else {
          o["values"] = f.values;
        }
      },
      objective.family());
  return o;
}

// Infinite and NaN doubles become null.
Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json opt_element(const std::optional<Element>& e) { return e ? Json(*e) : Json(nullptr); }

Json grid_value(const GridValue& g) {
  return Json{{"multiplier", g.multiplier}, {"step", g.step}, {"value", g.value()}};
}

Json step_to_json(const StepRecord& s) {
  return Json{{"i", s.i},
              {"threshold", s.threshold ? grid_value(*s.threshold) : Json(nullptr)},
              {"chosen", opt_element(s.chosen)},
              {"skipped", s.skipped},
              {"coordinate_before", s.coordinate_before},
              {"repeated", s.repeated},
              {"no_op", s.no_op}};
}

std::string_view case_name(RoundingCase c) {
  switch (c) {
    case RoundingCase::kMerge:
      return "merge";
    case RoundingCase::kSplit:
      return "split";
    case RoundingCase::kLoneEntry:
      return "lone";
  }
  return "unknown";
}

}  // namespace

Instance instance_from_json(const Json& doc, std::string name) {
  try {
    const auto costs = doc.at("costs").get<std::vector<double>>();
    const std::size_t n = doc.contains("n") ? doc.at("n").get<std::size_t>() : costs.size();
    if (n != costs.size()) {
      throw InputError("n = " + std::to_string(n) + " but costs has " + std::to_string(costs.size()) +
                       " entries");
    }
    const double capacity = doc.value("capacity", 1.0);
    Objective objective = objective_from_json(doc.at("objective"), n);
    if (name.empty()) name = doc.value("name", std::string());
    return make_instance(costs, objective, capacity, std::move(name));
  } catch (const nlohmann::json::exception& ex) {
    throw InputError(std::string("malformed instance: ") + ex.what());
  }
}

Instance load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw InputError("'" + path + "' is not valid JSON: " + ex.what());
  }
  return instance_from_json(doc, path);
}

Json instance_to_json(const Instance& instance) {
  Json doc;
  if (!instance.name.empty()) doc["name"] = instance.name;
  doc["n"] = instance.size();
  doc["capacity"] = 1.0;
  doc["costs"] = instance.costs;
  doc["objective"] = objective_to_json(instance.objective);
  return doc;
}

void save_instance(const std::string& path, const Instance& instance) {
  Json doc = instance_to_json(instance);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << doc.dump(1) << '\n';
}

Json to_json(const SparseFractionalPoint& x) {
  Json frac = Json::array();
  for (auto [e, v] : x.fractional()) frac.push_back(Json::array({e, v}));
  return Json{{"integral", std::vector<Element>(x.integral_set().begin(), x.integral_set().end())},
              {"fractional", std::move(frac)}};
}

Json to_json(const RoundingTranscript& tr) {
  Json steps = Json::array();
  for (const RoundingStep& s : tr.steps) {
    steps.push_back(Json{{"case", case_name(s.kind)},
                         {"high", s.high},
                         {"low", opt_element(s.low)},
                         {"prob_up", s.prob_up},
                         {"draw", s.draw},
                         {"up", s.up},
                         {"high_before", s.high_before},
                         {"low_before", s.low_before},
                         {"high_after", s.high_after},
                         {"low_after", s.low_after}});
  }
  return Json{{"seed", tr.seed ? Json(*tr.seed) : Json(nullptr)},
              {"steps", std::move(steps)},
              {"rounded_up", tr.rounded_up},
              {"final_set", tr.final_set}};
}

Json to_json(const PhaseTrace& ph) {
  Json opt1 = Json::array();
  for (const StepRecord& s : ph.opt1_steps) opt1.push_back(step_to_json(s));
  Json large = Json::array();
  for (const StepRecord& s : ph.large_steps) large.push_back(step_to_json(s));
  Json discarded = Json::array();
  for (const DiscardRecord& d : ph.density.discarded) {
    discarded.push_back(Json{{"element", d.element},
                             {"initial_gain", d.initial_gain},
                             {"final_gain", number(d.final_gain)},
                             {"update_count", d.update_count}});
  }
  return Json{{"p", ph.p},
              {"y0", to_json(ph.y0)},
              {"F_y0", ph.F_y0},
              {"opt1_steps", std::move(opt1)},
              {"A", ph.A},
              {"yt", to_json(ph.yt)},
              {"F_yt", ph.F_yt},
              {"W", grid_value(ph.W)},
              {"large_skipped", ph.large_skipped},
              {"r_p", ph.r_p},
              {"large_steps", std::move(large)},
              {"B", ph.B},
              {"F_z", ph.F_z},
              {"ended_early", ph.ended_early},
              {"density",
               {{"ran", ph.density.ran},
                {"target", ph.density.target},
                {"filtered_out", ph.density.filtered_out},
                {"selected", ph.density.selected},
                {"discarded", std::move(discarded)},
                {"min_shadow_ratio", ph.density.min_shadow_ratio},
                {"reached_target", ph.density.reached_target}}},
              {"C", ph.C},
              {"x", to_json(ph.x)},
              {"F_x", ph.F_x},
              {"repeated_selection", ph.repeated_selection}};
}

Json to_json(const OptPartition& part) {
  Json dropped = Json::array();
  for (const DroppedHeavy& d : part.dropped) {
    dropped.push_back(Json{{"element", d.element},
                           {"cost", d.cost},
                           {"marginal_on_opt1", d.marginal_on_opt1},
                           {"bound", d.bound}});
  }
  return Json{{"opt_set", part.opt_set},         {"opt_value", part.opt_value},
              {"order", part.order},             {"opt1", part.opt1},
              {"opt2", part.opt2},               {"dropped", std::move(dropped)},
              {"heavy_threshold", part.heavy_threshold}, {"opt1_cost", part.opt1_cost},
              {"opt2_cost", part.opt2_cost}};
}

Json to_json(const AnalysisTrace& trace) {
  Json phases = Json::array();
  for (const AnalysisPhase& ap : trace.phases) {
    Json opt1 = Json::array();
    for (const Opt1Record& r : ap.opt1) {
      opt1.push_back(Json{{"i", r.i},
                          {"best", opt_element(r.best)},
                          {"best_marginal", r.best_marginal},
                          {"v", r.v ? grid_value(*r.v) : Json(nullptr)},
                          {"chosen", opt_element(r.chosen)},
                          {"matched", opt_element(r.matched)}});
    }
    Json large = Json::array();
    for (const LargeRecord& r : ap.large) {
      large.push_back(Json{{"i", r.i},
                           {"strong", r.strong},
                           {"density_floor", r.density_floor},
                           {"best", opt_element(r.best)},
                           {"best_marginal", r.best_marginal},
                           {"w", grid_value(r.w)},
                           {"chosen", opt_element(r.chosen)},
                           {"matched", opt_element(r.matched)}});
    }
    phases.push_back(Json{{"opt1", std::move(opt1)},
                          {"opt2_marginal", ap.opt2_marginal},
                          {"W", grid_value(ap.W)},
                          {"large", std::move(large)}});
  }
  return Json{{"phases", std::move(phases)}};
}

Json to_json(const KnapsackResult& r, bool with_traces) {
  Json doc{{"set", r.set},
           {"value", r.value},
           {"cost", r.cost},
           {"feasible", within_budget(r.cost)},
           {"source", r.source},
           {"queries", r.queries},
           {"M_candidates", r.M_candidates},
           {"runs", r.runs},
           {"infeasible_discarded", r.infeasible_discarded},
           {"baseline_value", r.baseline_value},
           {"best_run_value", r.best_run_value},
           {"best_M", r.best_M ? Json(*r.best_M) : Json(nullptr)}};
  if (r.best_fractional) {
    doc["fractional"] = Json{{"x", to_json(r.best_fractional->x)},
                             {"value", r.best_fractional->value},
                             {"queries", r.best_fractional->queries}};
  }
  if (r.best_rounding) doc["rounding"] = to_json(*r.best_rounding);
  if (with_traces) {
    if (r.best_fractional) {
      Json phases = Json::array();
      for (const PhaseTrace& ph : r.best_fractional->phases) phases.push_back(to_json(ph));
      doc["phases"] = std::move(phases);
    }
    if (r.partition) doc["partition"] = to_json(*r.partition);
    if (r.analysis) doc["analysis"] = to_json(*r.analysis);
  }
  return doc;
}

Json to_json(const CheckOutcome& c) {
  return Json{{"name", c.name},
              {"ok", c.ok},
              {"evaluated", c.evaluated},
              {"skipped", c.skipped},
              {"worst_slack", number(c.worst_slack)},
              {"witness", c.witness}};
}

Json to_json(const VerifyReport& rep, bool with_traces) {
  Json checks = Json::array();
  for (const CheckOutcome& c : rep.checks) checks.push_back(to_json(c));
  Json doc{{"instance", rep.instance},
           {"n", rep.n},
           {"epsilon", rep.eps},
           {"t", rep.grid.t},
           {"r", rep.grid.r},
           {"phases", rep.grid.phases},
           {"M", rep.result.best_M ? Json(*rep.result.best_M) : Json(nullptr)},
           {"opt_value", rep.opt_value},
           {"opt_set", rep.opt_set},
           {"ok", rep.ok()},
           {"checks", std::move(checks)},
           {"flags",
            {{"repeated_selection_phases", rep.flagged_phases},
             {"opt1_skips", rep.opt1_skips},
             {"large_stage_skips", rep.large_skips}}}};
  if (rep.rounding) {
    const RoundingStats& s = *rep.rounding;
    doc["rounding"] = Json{{"trials", s.trials},
                           {"mass", s.mass},
                           {"mass_integral", s.mass_integral},
                           {"worst_frequency_z", s.worst_frequency_z},
                           {"F_x", s.F_x},
                           {"mean_value", s.mean_value},
                           {"std_error", s.std_error},
                           {"grouping_ok", s.grouping.ok},
                           {"grouping_reason", s.grouping.reason},
                           {"max_rounded_up_cost", s.max_rounded_up_cost},
                           {"max_path_cost", s.max_path_cost},
                           {"infeasible_paths", s.infeasible_paths}};
  }
  doc["result"] = to_json(rep.result, with_traces);
  return doc;
}

}  // namespace subknap
