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

#include "subknap/guessing.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <string>

namespace subknap {

namespace {

std::int64_t floor_ratio(double a, double b) {
  // a / b for ratios that are integers up to rounding, e.g. (1/eps) / eps.
  return static_cast<std::int64_t>(std::floor(a / b + 1e-9));
}

std::size_t ceil_inverse(double eps) {
  return static_cast<std::size_t>(std::ceil(1.0 / eps - 1e-9));
}

bool contains(const std::vector<Element>& v, Element e) {
  return std::find(v.begin(), v.end(), e) != v.end();
}

}  // namespace

GridValue GridValue::floor_of(double x, double step) {
  if (!(step > 0.0) || !(x > 0.0)) return GridValue{0, step};
  auto m = static_cast<std::int64_t>(std::floor(x / step));
  // Repair the division so that m * step <= x < (m + 1) * step holds as
  // computed in doubles.
  while (m > 0 && static_cast<double>(m) * step > x) --m;
  while (static_cast<double>(m + 1) * step <= x) ++m;
  return GridValue{m, step};
}

GuessGrid GuessGrid::defaults(double eps, double M) {
  GuessGrid g;
  g.eps = eps;
  g.M = M;
  g.t = static_cast<std::size_t>(std::ceil(1.0 / (eps * eps * eps) - 1e-9));
  g.r = ceil_inverse(eps);
  g.phases = ceil_inverse(eps);
  return g;
}

void GuessGrid::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) throw InputError("epsilon must lie in (0, 1)");
  if (t == 0 || r == 0 || phases == 0) throw InputError("t, r and phases must be >= 1");
  if (!(M > 0.0) || !std::isfinite(M)) throw InputError("M must be positive");
  if (v_stride < 1 || W_stride < 1 || w_stride < 1) throw InputError("grid strides must be >= 1");
}

std::int64_t GuessGrid::v_max() const { return floor_ratio(M, v_step()); }
std::int64_t GuessGrid::W_max() const { return floor_ratio(M, W_step()); }
std::int64_t GuessGrid::w_max(const GridValue& W) const {
  if (W.multiplier <= 0) return 0;
  return floor_ratio(static_cast<double>(r), eps * eps);
}

double guess_count(const GuessGrid& grid) {
  grid.validate();
  double v_count = static_cast<double>(grid.v_max() / grid.v_stride + 1);
  double per_phase_w = 0.0;
  for (std::int64_t k = 0; k <= grid.W_max(); k += grid.W_stride) {
    GridValue W{k, grid.W_step()};
    double w_count = static_cast<double>(grid.w_max(W) / grid.w_stride + 1);
    per_phase_w += std::pow(w_count, static_cast<double>(grid.r + 1));
  }
  double per_phase = std::pow(v_count, static_cast<double>(grid.t)) * per_phase_w;
  return std::pow(per_phase, static_cast<double>(grid.phases));
}

namespace {

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

GuessLimitError::GuessLimitError(double count, double limit)
    : CapacityError("guess enumeration would try " + short_number(count) +
                    " sequences, above the limit of " + short_number(limit) +
                    "; use practical (thinned) or analysis-guided mode"),
      count_(count) {}

GuessEnumerator::GuessEnumerator(const GuessGrid& grid, double limit)
    : grid_(grid), count_(guess_count(grid)) {
  if (count_ > limit) throw GuessLimitError(count_, limit);
  per_phase_ = grid_.t + 1 + grid_.r + 1;
  digits_.assign(per_phase_ * grid_.phases, 0);
}

std::int64_t GuessEnumerator::digit_max(std::size_t d) const {
  std::size_t q = d % per_phase_;
  if (q < grid_.t) return grid_.v_max() / grid_.v_stride;
  if (q == grid_.t) return grid_.W_max() / grid_.W_stride;
  std::size_t w_digit = d - q + grid_.t;
  GridValue W{digits_[w_digit] * grid_.W_stride, grid_.W_step()};
  return grid_.w_max(W) / grid_.w_stride;
}

void GuessEnumerator::materialize(GuessSequence& out) const {
  out.v.assign(grid_.phases, {});
  out.W.assign(grid_.phases, {});
  out.w.assign(grid_.phases, {});
  for (std::size_t p = 0; p < grid_.phases; ++p) {
    const std::size_t base = p * per_phase_;
    for (std::size_t i = 0; i < grid_.t; ++i) {
      out.v[p].push_back({digits_[base + i] * grid_.v_stride, grid_.v_step()});
    }
    out.W[p] = {digits_[base + grid_.t] * grid_.W_stride, grid_.W_step()};
    for (std::size_t i = 0; i <= grid_.r; ++i) {
      out.w[p].push_back({digits_[base + grid_.t + 1 + i] * grid_.w_stride, grid_.w_step(out.W[p])});
    }
  }
}

bool GuessEnumerator::next(GuessSequence& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    materialize(out);
    return true;
  }
  for (std::size_t d = digits_.size(); d-- > 0;) {
    if (digits_[d] < digit_max(d)) {
      ++digits_[d];
      std::fill(digits_.begin() + static_cast<std::ptrdiff_t>(d) + 1, digits_.end(), 0);
      materialize(out);
      return true;
    }
  }
  done_ = true;
  return false;
}

std::vector<Element> greedy_order_opt(const CountingOracle& oracle, std::span<const Element> opt_set) {
  std::vector<Element> rest(opt_set.begin(), opt_set.end());
  std::sort(rest.begin(), rest.end());
  std::vector<Element> order;
  ObjectiveState state = oracle.objective().empty_state();
  while (!rest.empty()) {
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t j = 0; j < rest.size(); ++j) {
      double g = oracle.gain(state, rest[j]);
      if (g > best_gain) {
        best_gain = g;
        best = j;
      }
    }
    oracle.commit(state, rest[best]);
    order.push_back(rest[best]);
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
  }
  return order;
}

OptPartition partition_opt(const CountingOracle& oracle, std::span<const double> costs,
                           std::span<const Element> order, double eps, std::size_t t) {
  OptPartition part;
  part.order.assign(order.begin(), order.end());
  part.opt_set = part.order;
  std::sort(part.opt_set.begin(), part.opt_set.end());
  part.opt_value = oracle.value(part.opt_set);
  const std::size_t k = std::min(t, order.size());
  part.opt1.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k));
  for (Element e : part.opt1) part.opt1_cost += costs[e];
  part.heavy_threshold = eps * eps * (1.0 - part.opt1_cost);
  double opt1_value = oracle.value(part.opt1);
  for (std::size_t j = k; j < order.size(); ++j) {
    Element o = order[j];
    if (costs[o] > part.heavy_threshold) {
      std::vector<Element> plus = part.opt1;
      plus.push_back(o);
      part.dropped.push_back({o, costs[o], oracle.value(plus) - opt1_value,
                              opt1_value / static_cast<double>(t)});
    } else {
      part.opt2.push_back(o);
      part.opt2_cost += costs[o];
    }
  }
  return part;
}

AnalysisGuesser::AnalysisGuesser(const Objective& objective, std::span<const double> costs,
                                 OptPartition partition, const GuessGrid& grid)
    : shadow_(objective),
      costs_(costs.begin(), costs.end()),
      partition_(std::move(partition)),
      grid_(grid) {
  grid_.validate();
  phase_ = 0;
  index_ = 0;
  next_ = Expect::kLargeThreshold;
}

void AnalysisGuesser::expect(bool ok, const char* what) const {
  if (!ok) throw std::logic_error(std::string("analysis guesser: out-of-order call to ") + what);
}

AnalysisPhase& AnalysisGuesser::phase(std::size_t p) { return trace_.phases.at(p - 1); }

std::optional<GridValue> AnalysisGuesser::opt1_threshold(std::size_t p, std::size_t i,
                                                         const MultilinearState& y) {
  bool same_phase = next_ == Expect::kOpt1Threshold && p == phase_ && i == index_ && i <= grid_.t;
  bool new_phase = i == 1 && p == phase_ + 1 &&
                   (next_ == Expect::kLargeThreshold || next_ == Expect::kLargeSelected);
  expect(same_phase || new_phase, "opt1_threshold");
  if (new_phase) {
    phase_ = p;
    index_ = 1;
    matched_.clear();
    trace_.phases.emplace_back();
  }
  Opt1Record rec{i, std::nullopt, 0.0, std::nullopt, std::nullopt, std::nullopt};
  double best = 0.0;
  std::vector<Element> pool = partition_.opt1;
  std::sort(pool.begin(), pool.end());
  for (Element o : pool) {
    if (contains(matched_, o)) continue;
    double g = y.probe_gain(shadow_, o);
    if (!rec.best || g > best) {
      rec.best = o;
      best = g;
    }
  }
  rec.best_marginal = best;
  // Nothing left to match, or every unmatched element is worthless here.
  if (rec.best && best > kSnapTol * std::max(1.0, std::abs(y.value()))) {
    rec.v = GridValue::floor_of(best, grid_.v_step());
  }
  phase(p).opt1.push_back(rec);
  next_ = Expect::kOpt1Selected;
  return rec.v;
}

void AnalysisGuesser::opt1_selected(std::size_t p, std::size_t i, std::optional<Element> a) {
  expect(next_ == Expect::kOpt1Selected && p == phase_ && i == index_, "opt1_selected");
  Opt1Record& rec = phase(p).opt1.back();
  rec.chosen = a;
  if (a && contains(partition_.opt1, *a) && !contains(matched_, *a)) {
    rec.matched = a;
  } else if (rec.v) {
    rec.matched = rec.best;
  }
  if (rec.matched) matched_.push_back(*rec.matched);
  ++index_;
  next_ = Expect::kOpt1Threshold;
}

GridValue AnalysisGuesser::phase_target(std::size_t p, const MultilinearState& z0) {
  expect(next_ == Expect::kOpt1Threshold && p == phase_ && index_ == grid_.t + 1, "phase_target");
  AnalysisPhase& ph = phase(p);
  if (!partition_.opt2.empty()) {
    ph.opt2_marginal = eval_exact(shadow_, z0.point().join(partition_.opt2)) -
                       eval_exact(shadow_, z0.point());
  }
  ph.W = GridValue::floor_of(ph.opt2_marginal, grid_.W_step());
  matched_.clear();
  index_ = 1;
  next_ = Expect::kLargeThreshold;
  return ph.W;
}

GridValue AnalysisGuesser::large_threshold(std::size_t p, std::size_t i, const MultilinearState& z) {
  expect(next_ == Expect::kLargeThreshold && p == phase_ && i == index_ && i <= grid_.r + 1,
         "large_threshold");
  AnalysisPhase& ph = phase(p);
  LargeRecord rec;
  rec.i = i;
  rec.w = GridValue{0, grid_.w_step(ph.W)};
  if (!partition_.opt2.empty() && partition_.opt2_cost > 0.0) {
    double total = eval_exact(shadow_, z.point().join(partition_.opt2)) - eval_exact(shadow_, z.point());
    rec.density_floor = (1.0 - 5.0 * grid_.eps) * total / partition_.opt2_cost;
    std::vector<Element> pool = partition_.opt2;
    std::sort(pool.begin(), pool.end());
    double best = 0.0;
    for (Element o : pool) {
      if (contains(matched_, o)) continue;
      double g = z.probe_gain(shadow_, o);
      if (!at_least(g / costs_[o], rec.density_floor)) continue;
      rec.strong.push_back(o);
      if (!rec.best || g > best) {
        rec.best = o;
        best = g;
      }
    }
    rec.best_marginal = best;
    if (rec.best) rec.w = GridValue::floor_of(best, grid_.w_step(ph.W));
  }
  ph.large.push_back(rec);
  next_ = Expect::kLargeSelected;
  return rec.w;
}

void AnalysisGuesser::large_selected(std::size_t p, std::size_t i, std::optional<Element> b) {
  expect(next_ == Expect::kLargeSelected && p == phase_ && i == index_, "large_selected");
  LargeRecord& rec = phase(p).large.back();
  rec.chosen = b;
  if (b && contains(rec.strong, *b)) {
    rec.matched = b;
  } else {
    rec.matched = rec.best;
  }
  if (rec.matched) matched_.push_back(*rec.matched);
  ++index_;
  next_ = Expect::kLargeThreshold;
}

}  // namespace subknap
