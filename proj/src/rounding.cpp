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

#include "subknap/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace subknap {

namespace {

struct Slot {
  Element e;
  double x;
};

double snap(double v) {
  if (v <= kSnapTol) return 0.0;
  if (v >= 1.0 - kSnapTol) return 1.0;
  return v;
}

}  // namespace

RoundingTranscript round_point(const SparseFractionalPoint& x, std::span<const double> costs,
                               CounterRng& rng) {
  RoundingTranscript out;
  std::vector<Slot> list;
  for (auto [e, v] : x.fractional()) {
    if (e >= costs.size()) throw InputError("rounding: element id out of range");
    if (!(v > 0.0 && v < 1.0)) throw InputError("rounding: fractional value outside (0, 1)");
    list.push_back({e, v});
  }
  // Cheapest first; the pair at the back is the two most expensive entries.
  std::sort(list.begin(), list.end(), [&](const Slot& a, const Slot& b) {
    if (costs[a.e] != costs[b.e]) return costs[a.e] < costs[b.e];
    return a.e < b.e;
  });

  while (!list.empty()) {
    if (list.size() == 1) {
      RoundingStep step{list[0].e, std::nullopt, RoundingCase::kLoneEntry};
      step.high_before = list[0].x;
      step.high_after = 1.0;
      out.steps.push_back(step);
      out.rounded_up.push_back(list[0].e);
      list.clear();
      break;
    }
    Slot& hi = list[list.size() - 1];
    Slot& lo = list[list.size() - 2];
    RoundingStep step{hi.e, lo.e, RoundingCase::kMerge};
    step.high_before = hi.x;
    step.low_before = lo.x;
    const double sum = hi.x + lo.x;
    double new_hi;
    double new_lo;
    if (sum > 1.0 + kSnapTol) {
      step.kind = RoundingCase::kSplit;
      // Both updates use the values from before the step.
      step.prob_up = (1.0 - lo.x) / (2.0 - sum);
      step.draw = rng.uniform();
      step.up = step.draw < step.prob_up;
      new_hi = step.up ? 1.0 : sum - 1.0;
      new_lo = step.up ? sum - 1.0 : 1.0;
    } else {
      step.prob_up = hi.x / sum;
      step.draw = rng.uniform();
      step.up = step.draw < step.prob_up;
      new_hi = step.up ? sum : 0.0;
      new_lo = step.up ? 0.0 : sum;
    }
    new_hi = snap(new_hi);
    new_lo = snap(new_lo);
    step.high_after = new_hi;
    step.low_after = new_lo;
    out.steps.push_back(step);

    Element hi_e = hi.e;
    Element lo_e = lo.e;
    // Survivors keep their relative (cost) order: lo sits below hi.
    list.resize(list.size() - 2);
    if (new_lo == 1.0) out.rounded_up.push_back(lo_e);
    if (new_hi == 1.0) out.rounded_up.push_back(hi_e);
    if (new_lo > 0.0 && new_lo < 1.0) list.push_back({lo_e, new_lo});
    if (new_hi > 0.0 && new_hi < 1.0) list.push_back({hi_e, new_hi});
  }

  std::vector<Element> final_set(x.integral_set().begin(), x.integral_set().end());
  final_set.insert(final_set.end(), out.rounded_up.begin(), out.rounded_up.end());
  std::sort(final_set.begin(), final_set.end());
  out.final_set = std::move(final_set);
  return out;
}

RoundingTranscript round_point(const SparseFractionalPoint& x, std::span<const double> costs,
                               std::uint64_t seed) {
  CounterRng rng(seed);
  RoundingTranscript out = round_point(x, costs, rng);
  out.seed = seed;
  return out;
}

GroupingCheck check_grouping_invariant(const SparseFractionalPoint& x, std::span<const double> costs,
                                       std::vector<double> reference) {
  GroupingCheck check;
  std::sort(reference.begin(), reference.end(), std::greater<>());
  std::vector<Slot> list;
  for (auto [e, v] : x.fractional()) {
    list.push_back({e, v});
    check.mass += v;
  }
  std::sort(list.begin(), list.end(), [&](const Slot& a, const Slot& b) {
    if (costs[a.e] != costs[b.e]) return costs[a.e] > costs[b.e];
    return a.e < b.e;
  });
  if (check.mass > static_cast<double>(reference.size()) + kRelTol) {
    check.ok = false;
    check.reason = "fractional mass exceeds the number of reference elements";
    return check;
  }
  double start = 0.0;
  for (const Slot& s : list) {
    const double end = start + s.x;
    // Groups [g-1, g) that the interval [start, end) overlaps with positive length.
    auto first = static_cast<std::size_t>(std::floor(start + kSnapTol)) + 1;
    auto last = static_cast<std::size_t>(std::ceil(end - kSnapTol));
    for (std::size_t g = first; g <= std::max(first, last); ++g) {
      bool over = g > reference.size() || costs[s.e] > reference[g - 1];
      if (over) {
        check.ok = false;
        check.element = s.e;
        check.group = g;
        check.reason = g > reference.size() ? "group has no reference element"
                                            : "element costs more than its group's reference";
        return check;
      }
    }
    start = end;
  }
  return check;
}

}  // namespace subknap
