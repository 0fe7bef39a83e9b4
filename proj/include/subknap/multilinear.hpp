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

#ifndef SUBKNAP_MULTILINEAR_HPP_
#define SUBKNAP_MULTILINEAR_HPP_

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "subknap/oracle.hpp"

namespace subknap {

inline constexpr std::size_t kDefaultMaxFractional = 20;

// Point of [0,1]^V stored as an integral set (x_e = 1) plus a short list of
// strictly fractional coordinates; every other coordinate is 0. Immutable:
// updates return a new point.
class SparseFractionalPoint {
 public:
  using Entry = std::pair<Element, double>;

  SparseFractionalPoint() = default;
  // Values within kSnapTol of 1 move to the integral set and values within
  // kSnapTol of 0 are dropped. Throws InputError on values outside [0, 1],
  // duplicates, or overlap between the two parts.
  SparseFractionalPoint(std::vector<Element> integral, std::vector<Entry> fractional);

  static SparseFractionalPoint indicator(std::vector<Element> set) {
    return SparseFractionalPoint(std::move(set), {});
  }

  std::span<const Element> integral_set() const { return integral_; }
  std::span<const Entry> fractional() const { return fractional_; }
  std::size_t fractional_size() const { return fractional_.size(); }
  bool is_integral() const { return fractional_.empty(); }

  double coordinate(Element e) const;
  // x v 1_e
  SparseFractionalPoint join(Element e) const;
  // x v 1_S
  SparseFractionalPoint join(std::span<const Element> set) const;
  SparseFractionalPoint with_coordinate(Element e, double value) const;

  // Sum of x_e * c_e.
  double cost(std::span<const double> costs) const;

  friend bool operator==(const SparseFractionalPoint&, const SparseFractionalPoint&) = default;

 private:
  std::vector<Element> integral_;  // sorted
  std::vector<Entry> fractional_;  // sorted by element
};

// x_e <- x_e + delta, snapping to 1 within kSnapTol. Throws InputError when
// the result would exceed 1 + kSnapTol or delta <= 0.
SparseFractionalPoint increase_coordinate(const SparseFractionalPoint& x, Element e, double delta);

// Subset-value memo shared across evaluations. Hits are not oracle queries.
class ValueCache {
 public:
  const double* find(const std::vector<Element>& sorted_set) const;
  void insert(std::vector<Element> sorted_set, double value);
  std::size_t size() const { return table_.size(); }

 private:
  std::map<std::vector<Element>, double> table_;
};

struct MultilinearOptions {
  std::size_t k_max = kDefaultMaxFractional;
  ValueCache* cache = nullptr;
};

// F(x) by full expansion over the fractional support: exactly 2^k oracle
// queries for k fractional coordinates (fewer only through `cache`). Throws
// CapacityError when k exceeds k_max.
double eval_exact(const CountingOracle& oracle, const SparseFractionalPoint& x,
                  const MultilinearOptions& options = {});

// F(x v 1_e) - F(x); zero without queries when x_e = 1.
double marginal_up(const CountingOracle& oracle, const SparseFractionalPoint& x, Element e,
                   const MultilinearOptions& options = {});

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
};

// Independent-inclusion sampling estimate of F(x). Reproducible per seed.
McEstimate eval_mc(const CountingOracle& oracle, const SparseFractionalPoint& x,
                   std::uint64_t samples, std::uint64_t seed);

// Incremental F(x) for a point that only moves upward (joins and coordinate
// increases). Keeps one objective state per subset of the fractional support,
// so a marginal costs 2^k queries and a fractional coordinate's own marginal
// costs none.
class MultilinearState {
 public:
  // 2^k queries.
  MultilinearState(const CountingOracle& oracle, SparseFractionalPoint x,
                   std::size_t k_max = kDefaultMaxFractional);

  const SparseFractionalPoint& point() const { return point_; }
  double value() const { return value_; }
  std::size_t fractional_size() const { return frac_.size(); }
  double coordinate(Element e) const { return point_.coordinate(e); }

  // F(x v 1_e) - F(x). The non-const form records the query on each state so
  // that a following join of the same element is free.
  double gain(const CountingOracle& oracle, Element e);
  double probe_gain(const CountingOracle& oracle, Element e) const;

  // x <- x v 1_e
  void join(const CountingOracle& oracle, Element e);
  // x_e <- x_e + delta with snapping; CapacityError when a new fractional
  // coordinate would exceed k_max.
  void increase(const CountingOracle& oracle, Element e, double delta);

 private:
  template <class GainFn>
  double gain_impl(Element e, GainFn&& state_gain) const;
  void drop_fractional(std::size_t j);
  void refresh();

  SparseFractionalPoint point_;
  std::size_t k_max_;
  std::vector<Element> frac_;  // bit j of a subset mask <-> frac_[j]
  std::vector<double> xs_;
  std::vector<ObjectiveState> states_;
  std::vector<double> probs_;
  double value_ = 0.0;
};

}  // namespace subknap

#endif  // SUBKNAP_MULTILINEAR_HPP_
