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

#ifndef SUBKNAP_OBJECTIVE_HPP_
#define SUBKNAP_OBJECTIVE_HPP_

#include <cstddef>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "subknap/common.hpp"

namespace subknap {

// f(S) = sum of weights of universe items covered by S.
struct WeightedCoverage {
  std::vector<double> universe_weights;
  std::vector<std::vector<std::uint32_t>> covers;  // per element
};

// f(S) = sum_u max_{e in S} sim[u][e], f(empty) = 0.
struct FacilityLocation {
  std::size_t customers = 0;
  std::size_t n = 0;
  std::vector<double> similarity;  // row-major, customers x n

  double sim(std::size_t u, Element e) const { return similarity[u * n + e]; }
};

// f(S) = sum_j a_j * sqrt(sum_{e in S} w_{j,e}).
struct ConcaveModular {
  struct Group {
    double scale = 0.0;
    std::vector<std::pair<Element, double>> weights;  // sparse
  };
  std::size_t n = 0;
  std::vector<Group> groups;
};

// Explicit value table indexed by subset bitmask. In-process only; lets
// tests inject arbitrary (even non-submodular) set functions.
struct TabulatedFunction {
  std::size_t n = 0;
  std::vector<double> values;  // size 2^n, values[0] is f(empty)
};

class Objective;

// Incremental evaluation state for one set S. Cheap to copy for the
// coverage and concave families; O(customers) for facility location.
class ObjectiveState {
 public:
  double value() const { return value_; }
  bool contains(Element e) const { return member_[e]; }
  std::size_t size() const { return size_; }

  // f(S + e) - f(S). Does not modify S.
  double gain(Element e) const;
  // S <- S + e.
  void add(Element e);

  // Bookkeeping for query accounting: the element whose gain was last
  // queried on this exact set, if any.
  std::int64_t last_queried() const { return last_queried_; }
  void set_last_queried(std::int64_t e) { last_queried_ = e; }

 private:
  friend class Objective;
  explicit ObjectiveState(const Objective* objective);

  const Objective* objective_;
  double value_ = 0.0;
  std::size_t size_ = 0;
  std::vector<bool> member_;
  // coverage: multiplicity per universe item; facility: best similarity per
  // customer; concave: per-group weight sum; table: current mask in slot 0.
  std::vector<double> aux_;
  std::int64_t last_queried_ = -1;
};

// Monotone submodular objective over ground set [0, n). Evaluation is a pure
// function of the argument and safe for concurrent read-only use.
class Objective {
 public:
  using Family =
      std::variant<WeightedCoverage, FacilityLocation, ConcaveModular, TabulatedFunction>;

  explicit Objective(WeightedCoverage f);
  explicit Objective(FacilityLocation f);
  explicit Objective(ConcaveModular f);
  explicit Objective(TabulatedFunction f);

  std::size_t size() const { return n_; }
  const Family& family() const { return family_; }
  std::string_view type_name() const;

  // f(S); duplicates in S are ignored. Throws InputError on ids >= n.
  double value(std::span<const Element> set) const;

  ObjectiveState empty_state() const;
  ObjectiveState state_of(std::span<const Element> set) const;

  // Same function on the kept elements, reindexed densely in the given order.
  Objective restrict_to(std::span<const Element> kept) const;

 private:
  friend class ObjectiveState;
  void index();

  Family family_;
  std::size_t n_ = 0;
  // concave family: per-element (group, weight) lists.
  std::vector<std::vector<std::pair<std::uint32_t, double>>> by_element_;
};

}  // namespace subknap

#endif  // SUBKNAP_OBJECTIVE_HPP_
