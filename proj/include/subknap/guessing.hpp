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

#ifndef SUBKNAP_GUESSING_HPP_
#define SUBKNAP_GUESSING_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "subknap/multilinear.hpp"

namespace subknap {

// An integer multiple of a step. The multiplier is the exact part; value()
// is only used for comparisons against marginals.
struct GridValue {
  std::int64_t multiplier = 0;
  double step = 0.0;

  double value() const { return static_cast<double>(multiplier) * step; }
  // Largest grid point <= x (x >= 0). A zero step yields the zero point.
  static GridValue floor_of(double x, double step);
};

struct GuessGrid {
  double eps = 0.5;
  std::size_t t = 1;       // OPT_1 iterations per phase
  std::size_t r = 1;       // large-value iterations per phase
  std::size_t phases = 1;  // P
  double M = 1.0;
  // Keep every k-th multiplier (1 = full grid).
  std::int64_t v_stride = 1;
  std::int64_t W_stride = 1;
  std::int64_t w_stride = 1;

  // Default couplings: t = ceil(1/eps^3), r = P = ceil(1/eps).
  static GuessGrid defaults(double eps, double M);
  void validate() const;  // throws InputError

  double v_step() const { return eps * M / static_cast<double>(t); }
  double W_step() const { return eps * M; }
  double w_step(const GridValue& W) const { return eps * eps * W.value() / static_cast<double>(r); }
  // Largest admissible multipliers: the grids run from 0 to M (resp. W_p).
  std::int64_t v_max() const;
  std::int64_t W_max() const;
  std::int64_t w_max(const GridValue& W) const;
};

struct GuessSequence {
  std::vector<std::vector<GridValue>> v;  // [P][t]
  std::vector<GridValue> W;               // [P]
  std::vector<std::vector<GridValue>> w;  // [P][r+1]
};

// Closed-form size of the (thinned) grid product. Exact while below 2^53.
double guess_count(const GuessGrid& grid);

class GuessLimitError : public CapacityError {
 public:
  GuessLimitError(double count, double limit);
  double count() const { return count_; }

 private:
  double count_;
};

// Lexicographic walk over every sequence of the grid, last digit fastest.
// The digit order is, per phase: v[p][1..t], W_p, w[p][1..r+1].
class GuessEnumerator {
 public:
  // Throws GuessLimitError when guess_count(grid) exceeds `limit`.
  GuessEnumerator(const GuessGrid& grid, double limit);
  // Fills `out` with the next sequence; false when exhausted.
  bool next(GuessSequence& out);
  double count() const { return count_; }

 private:
  std::int64_t digit_max(std::size_t d) const;
  void materialize(GuessSequence& out) const;

  GuessGrid grid_;
  double count_;
  std::vector<std::int64_t> digits_;
  std::size_t per_phase_;
  bool started_ = false;
  bool done_ = false;
};

// Source of guessed values, called by the knapsack engine in protocol order:
// for each phase, opt1_threshold/opt1_selected for i = 1..t, then
// phase_target, then large_threshold/large_selected pairs while the large
// stage runs. Indices are 1-based.
class GuessSupplier {
 public:
  virtual ~GuessSupplier() = default;
  // nullopt skips the iteration.
  virtual std::optional<GridValue> opt1_threshold(std::size_t p, std::size_t i,
                                                  const MultilinearState& y) = 0;
  virtual void opt1_selected(std::size_t, std::size_t, std::optional<Element>) {}
  virtual GridValue phase_target(std::size_t p, const MultilinearState& z0) = 0;
  virtual GridValue large_threshold(std::size_t p, std::size_t i, const MultilinearState& z) = 0;
  virtual void large_selected(std::size_t, std::size_t, std::optional<Element>) {}
};

class FixedGuesser : public GuessSupplier {
 public:
  explicit FixedGuesser(const GuessSequence& sequence) : seq_(&sequence) {}
  std::optional<GridValue> opt1_threshold(std::size_t p, std::size_t i,
                                          const MultilinearState&) override {
    return seq_->v.at(p - 1).at(i - 1);
  }
  GridValue phase_target(std::size_t p, const MultilinearState&) override { return seq_->W.at(p - 1); }
  GridValue large_threshold(std::size_t p, std::size_t i, const MultilinearState&) override {
    return seq_->w.at(p - 1).at(i - 1);
  }

 private:
  const GuessSequence* seq_;
};

// o_1, o_2, ...: each maximizes the marginal over the prefix, ties to the
// lowest id.
std::vector<Element> greedy_order_opt(const CountingOracle& oracle, std::span<const Element> opt_set);

struct DroppedHeavy {
  Element element;
  double cost;
  double marginal_on_opt1;  // f(OPT_1 + o) - f(OPT_1)
  double bound;             // f(OPT_1) / t
};

struct OptPartition {
  std::vector<Element> opt_set;  // sorted
  double opt_value = 0.0;
  std::vector<Element> order;  // greedy order
  std::vector<Element> opt1;   // first min(t, |OPT|), in order
  std::vector<Element> opt2;   // remainder after the heavy filter, in order
  std::vector<DroppedHeavy> dropped;
  double heavy_threshold = 0.0;  // eps^2 (1 - c(OPT_1))
  double opt1_cost = 0.0;
  double opt2_cost = 0.0;
};

OptPartition partition_opt(const CountingOracle& oracle, std::span<const double> costs,
                           std::span<const Element> order, double eps, std::size_t t);

struct Opt1Record {
  std::size_t i;
  std::optional<Element> best;     // argmax over unmatched OPT_1
  double best_marginal = 0.0;
  std::optional<GridValue> v;
  std::optional<Element> chosen;   // a_{p,i}
  std::optional<Element> matched;  // o'_i
};

struct LargeRecord {
  std::size_t i;
  std::vector<Element> strong;  // SO_i
  double density_floor = 0.0;   // L at z^{(p,i-1)}
  std::optional<Element> best;
  double best_marginal = 0.0;
  GridValue w;
  std::optional<Element> chosen;   // b_{p,i}
  std::optional<Element> matched;  // o'_i
};

struct AnalysisPhase {
  std::vector<Opt1Record> opt1;
  double opt2_marginal = 0.0;  // F(z0 v 1_OPT2) - F(z0)
  GridValue W;
  std::vector<LargeRecord> large;
};

struct AnalysisTrace {
  std::vector<AnalysisPhase> phases;
};

// Supplies the values constructed in the correctness argument from a known
// optimum. Uses its own uncounted oracle for the marginals it needs.
class AnalysisGuesser : public GuessSupplier {
 public:
  AnalysisGuesser(const Objective& objective, std::span<const double> costs, OptPartition partition,
                  const GuessGrid& grid);

  std::optional<GridValue> opt1_threshold(std::size_t p, std::size_t i,
                                          const MultilinearState& y) override;
  void opt1_selected(std::size_t p, std::size_t i, std::optional<Element> a) override;
  GridValue phase_target(std::size_t p, const MultilinearState& z0) override;
  GridValue large_threshold(std::size_t p, std::size_t i, const MultilinearState& z) override;
  void large_selected(std::size_t p, std::size_t i, std::optional<Element> b) override;

  const AnalysisTrace& trace() const { return trace_; }
  const OptPartition& partition() const { return partition_; }

 private:
  enum class Expect { kOpt1Threshold, kOpt1Selected, kLargeThreshold, kLargeSelected };
  void expect(bool ok, const char* what) const;
  AnalysisPhase& phase(std::size_t p);

  CountingOracle shadow_;
  std::vector<double> costs_;
  OptPartition partition_;
  GuessGrid grid_;
  AnalysisTrace trace_;
  std::vector<Element> matched_;  // o' chosen so far in the current stage
  std::size_t phase_ = 1;
  std::size_t index_ = 1;
  Expect next_ = Expect::kOpt1Threshold;
};

}  // namespace subknap

#endif  // SUBKNAP_GUESSING_HPP_
