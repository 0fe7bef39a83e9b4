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

#include "subknap/multilinear.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "subknap/rng.hpp"

namespace subknap {

namespace {

bool by_element(const SparseFractionalPoint::Entry& a, const SparseFractionalPoint::Entry& b) {
  return a.first < b.first;
}

void check_capacity(std::size_t k, std::size_t k_max) {
  if (k > k_max) {
    throw CapacityError("fractional support of size " + std::to_string(k) + " exceeds k_max = " +
                        std::to_string(k_max));
  }
}

// Probability of each subset mask under independent inclusion with marginals xs.
std::vector<double> subset_probabilities(const std::vector<double>& xs) {
  std::vector<double> probs(std::size_t{1} << xs.size());
  probs[0] = 1.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    const std::size_t half = std::size_t{1} << j;
    for (std::size_t m = 0; m < half; ++m) {
      probs[m | half] = probs[m] * xs[j];
      probs[m] *= 1.0 - xs[j];
    }
  }
  return probs;
}

}  // namespace

SparseFractionalPoint::SparseFractionalPoint(std::vector<Element> integral,
                                             std::vector<Entry> fractional)
    : integral_(std::move(integral)) {
  for (auto [e, v] : fractional) {
    if (!std::isfinite(v) || v < -kSnapTol || v > 1.0 + kSnapTol) {
      throw InputError("coordinate of element " + std::to_string(e) + " outside [0, 1]");
    }
    if (v >= 1.0 - kSnapTol) {
      integral_.push_back(e);
    } else if (v > kSnapTol) {
      fractional_.emplace_back(e, v);
    }
  }
  std::sort(integral_.begin(), integral_.end());
  if (std::adjacent_find(integral_.begin(), integral_.end()) != integral_.end()) {
    throw InputError("duplicate element in point");
  }
  std::sort(fractional_.begin(), fractional_.end(), by_element);
  for (std::size_t i = 0; i < fractional_.size(); ++i) {
    Element e = fractional_[i].first;
    if ((i > 0 && fractional_[i - 1].first == e) ||
        std::binary_search(integral_.begin(), integral_.end(), e)) {
      throw InputError("duplicate element in point");
    }
  }
}

double SparseFractionalPoint::coordinate(Element e) const {
  if (std::binary_search(integral_.begin(), integral_.end(), e)) return 1.0;
  auto it = std::lower_bound(fractional_.begin(), fractional_.end(), Entry{e, 0.0}, by_element);
  if (it != fractional_.end() && it->first == e) return it->second;
  return 0.0;
}

SparseFractionalPoint SparseFractionalPoint::join(Element e) const { return with_coordinate(e, 1.0); }

SparseFractionalPoint SparseFractionalPoint::join(std::span<const Element> set) const {
  SparseFractionalPoint out = *this;
  for (Element e : set) {
    if (std::binary_search(out.integral_.begin(), out.integral_.end(), e)) continue;
    out = out.with_coordinate(e, 1.0);
  }
  return out;
}

SparseFractionalPoint SparseFractionalPoint::with_coordinate(Element e, double value) const {
  std::vector<Element> integral;
  integral.reserve(integral_.size() + 1);
  for (Element i : integral_) {
    if (i != e) integral.push_back(i);
  }
  std::vector<Entry> fractional;
  fractional.reserve(fractional_.size() + 1);
  for (const auto& entry : fractional_) {
    if (entry.first != e) fractional.push_back(entry);
  }
  fractional.emplace_back(e, value);
  return SparseFractionalPoint(std::move(integral), std::move(fractional));
}

double SparseFractionalPoint::cost(std::span<const double> costs) const {
  double c = 0.0;
  for (Element e : integral_) c += costs[e];
  for (auto [e, v] : fractional_) c += v * costs[e];
  return c;
}

SparseFractionalPoint increase_coordinate(const SparseFractionalPoint& x, Element e, double delta) {
  if (!(delta > 0.0)) throw InputError("increase_coordinate: delta must be positive");
  double next = x.coordinate(e) + delta;
  if (next > 1.0 + kSnapTol) {
    throw InputError("increase_coordinate: coordinate of element " + std::to_string(e) +
                     " would reach " + std::to_string(next));
  }
  return x.with_coordinate(e, std::min(next, 1.0));
}

const double* ValueCache::find(const std::vector<Element>& sorted_set) const {
  auto it = table_.find(sorted_set);
  return it == table_.end() ? nullptr : &it->second;
}

void ValueCache::insert(std::vector<Element> sorted_set, double value) {
  table_.emplace(std::move(sorted_set), value);
}

double eval_exact(const CountingOracle& oracle, const SparseFractionalPoint& x,
                  const MultilinearOptions& options) {
  const auto frac = x.fractional();
  const std::size_t k = frac.size();
  check_capacity(k, options.k_max);
  std::vector<double> xs;
  for (auto [e, v] : frac) xs.push_back(v);
  const std::vector<double> probs = subset_probabilities(xs);

  const auto base = x.integral_set();
  double total = 0.0;
  std::vector<Element> set;
  for (std::size_t mask = 0; mask < probs.size(); ++mask) {
    set.assign(base.begin(), base.end());
    for (std::size_t j = 0; j < k; ++j) {
      if (mask >> j & 1U) set.push_back(frac[j].first);
    }
    std::sort(set.begin(), set.end());
    double value;
    if (options.cache != nullptr) {
      if (const double* hit = options.cache->find(set)) {
        value = *hit;
      } else {
        value = oracle.value(set);
        options.cache->insert(set, value);
      }
    } else {
      value = oracle.value(set);
    }
    total += probs[mask] * value;
  }
  return total;
}

double marginal_up(const CountingOracle& oracle, const SparseFractionalPoint& x, Element e,
                   const MultilinearOptions& options) {
  if (e >= oracle.size()) throw InputError("element id out of range");
  if (x.coordinate(e) == 1.0) return 0.0;
  return eval_exact(oracle, x.join(e), options) - eval_exact(oracle, x, options);
}

McEstimate eval_mc(const CountingOracle& oracle, const SparseFractionalPoint& x,
                   std::uint64_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError("eval_mc: samples must be >= 1");
  CounterRng rng(seed);
  const auto frac = x.fractional();
  const auto base = x.integral_set();
  // Welford accumulation.
  double mean = 0.0;
  double m2 = 0.0;
  std::vector<Element> set;
  for (std::uint64_t s = 0; s < samples; ++s) {
    set.assign(base.begin(), base.end());
    for (auto [e, v] : frac) {
      if (rng.uniform() < v) set.push_back(e);
    }
    double value = oracle.value(set);
    double delta = value - mean;
    mean += delta / static_cast<double>(s + 1);
    m2 += delta * (value - mean);
  }
  McEstimate out;
  out.mean = mean;
  if (samples > 1 && !x.is_integral()) {
    double var = m2 / static_cast<double>(samples - 1);
    out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(samples));
  }
  return out;
}

MultilinearState::MultilinearState(const CountingOracle& oracle, SparseFractionalPoint x,
                                   std::size_t k_max)
    : point_(std::move(x)), k_max_(k_max) {
  check_capacity(point_.fractional_size(), k_max_);
  for (auto [e, v] : point_.fractional()) {
    frac_.push_back(e);
    xs_.push_back(v);
  }
  const auto base = point_.integral_set();
  const std::size_t total = std::size_t{1} << frac_.size();
  states_.reserve(total);
  std::vector<Element> set;
  for (std::size_t mask = 0; mask < total; ++mask) {
    set.assign(base.begin(), base.end());
    for (std::size_t j = 0; j < frac_.size(); ++j) {
      if (mask >> j & 1U) set.push_back(frac_[j]);
    }
    std::sort(set.begin(), set.end());
    states_.push_back(oracle.state_of(set));
  }
  refresh();
}

void MultilinearState::refresh() {
  probs_ = subset_probabilities(xs_);
  value_ = 0.0;
  for (std::size_t m = 0; m < states_.size(); ++m) value_ += probs_[m] * states_[m].value();
}

template <class GainFn>
double MultilinearState::gain_impl(Element e, GainFn&& state_gain) const {
  auto it = std::find(frac_.begin(), frac_.end(), e);
  if (it != frac_.end()) {
    // Fractional coordinate: both sides of the difference are already held.
    const std::size_t bit = std::size_t{1} << (it - frac_.begin());
    double g = 0.0;
    for (std::size_t m = 0; m < states_.size(); ++m) {
      if (m & bit) continue;
      g += probs_[m] * (states_[m | bit].value() - states_[m].value());
    }
    return g;
  }
  if (point_.coordinate(e) == 1.0) return 0.0;
  double g = 0.0;
  for (std::size_t m = 0; m < states_.size(); ++m) g += probs_[m] * state_gain(m);
  return g;
}

double MultilinearState::gain(const CountingOracle& oracle, Element e) {
  if (e >= oracle.size()) throw InputError("element id out of range");
  return gain_impl(e, [&](std::size_t m) { return oracle.gain(states_[m], e); });
}

double MultilinearState::probe_gain(const CountingOracle& oracle, Element e) const {
  if (e >= oracle.size()) throw InputError("element id out of range");
  return gain_impl(e, [&](std::size_t m) { return oracle.peek_gain(states_[m], e); });
}

void MultilinearState::drop_fractional(std::size_t j) {
  // Keep the subsets that contain frac_[j] and close the gap in the mask.
  const std::size_t bit = std::size_t{1} << j;
  const std::size_t low = bit - 1;
  std::vector<ObjectiveState> kept;
  kept.reserve(states_.size() / 2);
  for (std::size_t m = 0; m < states_.size() / 2; ++m) {
    std::size_t full = (m & low) | ((m & ~low) << 1) | bit;
    kept.push_back(std::move(states_[full]));
  }
  states_ = std::move(kept);
  frac_.erase(frac_.begin() + static_cast<std::ptrdiff_t>(j));
  xs_.erase(xs_.begin() + static_cast<std::ptrdiff_t>(j));
}

void MultilinearState::join(const CountingOracle& oracle, Element e) {
  if (e >= oracle.size()) throw InputError("element id out of range");
  double current = point_.coordinate(e);
  if (current == 1.0) return;
  if (current > 0.0) {
    auto it = std::find(frac_.begin(), frac_.end(), e);
    drop_fractional(static_cast<std::size_t>(it - frac_.begin()));
  } else {
    for (auto& s : states_) oracle.commit(s, e);
  }
  point_ = point_.join(e);
  refresh();
}

void MultilinearState::increase(const CountingOracle& oracle, Element e, double delta) {
  if (e >= oracle.size()) throw InputError("element id out of range");
  SparseFractionalPoint next = increase_coordinate(point_, e, delta);
  double updated = next.coordinate(e);
  if (updated == 1.0) {
    join(oracle, e);
    return;
  }
  auto it = std::find(frac_.begin(), frac_.end(), e);
  if (it != frac_.end()) {
    xs_[static_cast<std::size_t>(it - frac_.begin())] = updated;
  } else {
    check_capacity(frac_.size() + 1, k_max_);
    const std::size_t half = states_.size();
    states_.reserve(2 * half);
    for (std::size_t m = 0; m < half; ++m) {
      states_.push_back(states_[m]);
      oracle.commit(states_.back(), e);
    }
    frac_.push_back(e);
    xs_.push_back(updated);
  }
  point_ = std::move(next);
  refresh();
}

}  // namespace subknap
