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

#include "subknap/objective.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace subknap {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}

}  // namespace

Objective::Objective(WeightedCoverage f) {
  for (auto& cover : f.covers) {
    std::sort(cover.begin(), cover.end());
    cover.erase(std::unique(cover.begin(), cover.end()), cover.end());
  }
  family_ = std::move(f);
  index();
}
Objective::Objective(FacilityLocation f) : family_(std::move(f)) { index(); }
Objective::Objective(ConcaveModular f) {
  // Repeated (group, element) entries add up.
  for (auto& g : f.groups) {
    std::sort(g.weights.begin(), g.weights.end());
    std::vector<std::pair<Element, double>> merged;
    for (auto [e, w] : g.weights) {
      if (!merged.empty() && merged.back().first == e) {
        merged.back().second += w;
      } else {
        merged.emplace_back(e, w);
      }
    }
    g.weights = std::move(merged);
  }
  family_ = std::move(f);
  index();
}
Objective::Objective(TabulatedFunction f) : family_(std::move(f)) { index(); }

void Objective::index() {
  std::visit(
      Overloaded{
          [&](const WeightedCoverage& f) {
            n_ = f.covers.size();
            for (double w : f.universe_weights) {
              require(std::isfinite(w) && w >= 0.0, "coverage: universe weights must be >= 0");
            }
            for (const auto& cover : f.covers) {
              for (auto u : cover) {
                require(u < f.universe_weights.size(), "coverage: universe item out of range");
              }
            }
          },
          [&](const FacilityLocation& f) {
            n_ = f.n;
            require(f.similarity.size() == f.customers * f.n,
                    "facility: similarity matrix has wrong shape");
            for (double s : f.similarity) {
              require(std::isfinite(s) && s >= 0.0, "facility: similarities must be >= 0");
            }
          },
          [&](const ConcaveModular& f) {
            n_ = f.n;
            by_element_.assign(n_, {});
            for (std::uint32_t j = 0; j < f.groups.size(); ++j) {
              const auto& g = f.groups[j];
              require(std::isfinite(g.scale) && g.scale >= 0.0, "concave_modular: scale must be >= 0");
              for (auto [e, w] : g.weights) {
                require(e < n_, "concave_modular: element out of range");
                require(std::isfinite(w) && w >= 0.0, "concave_modular: weights must be >= 0");
                by_element_[e].emplace_back(j, w);
              }
            }
          },
          [&](const TabulatedFunction& f) {
            n_ = f.n;
            require(f.n < 31 && f.values.size() == (std::size_t{1} << f.n),
                    "table: needs exactly 2^n values");
          },
      },
      family_);
}

std::string_view Objective::type_name() const {
  return std::visit(Overloaded{
                        [](const WeightedCoverage&) { return std::string_view("coverage"); },
                        [](const FacilityLocation&) { return std::string_view("facility"); },
                        [](const ConcaveModular&) { return std::string_view("concave_modular"); },
                        [](const TabulatedFunction&) { return std::string_view("table"); },
                    },
                    family_);
}

ObjectiveState Objective::empty_state() const { return ObjectiveState(this); }

ObjectiveState Objective::state_of(std::span<const Element> set) const {
  ObjectiveState s(this);
  for (Element e : set) {
    require(e < n_, "element id " + std::to_string(e) + " out of range");
    s.add(e);
  }
  return s;
}

double Objective::value(std::span<const Element> set) const {
  // Canonical (sorted) insertion order makes the result independent of how the
  // caller ordered the set, bit for bit.
  std::vector<Element> sorted(set.begin(), set.end());
  std::sort(sorted.begin(), sorted.end());
  return state_of(sorted).value();
}

Objective Objective::restrict_to(std::span<const Element> kept) const {
  for (Element e : kept) require(e < n_, "restrict_to: element out of range");
  return std::visit(
      Overloaded{
          [&](const WeightedCoverage& f) {
            WeightedCoverage g;
            g.universe_weights = f.universe_weights;
            for (Element e : kept) g.covers.push_back(f.covers[e]);
            return Objective(std::move(g));
          },
          [&](const FacilityLocation& f) {
            FacilityLocation g;
            g.customers = f.customers;
            g.n = kept.size();
            g.similarity.resize(g.customers * g.n);
            for (std::size_t u = 0; u < f.customers; ++u) {
              for (std::size_t i = 0; i < kept.size(); ++i) {
                g.similarity[u * g.n + i] = f.sim(u, kept[i]);
              }
            }
            return Objective(std::move(g));
          },
          [&](const ConcaveModular& f) {
            std::vector<std::int64_t> remap(n_, -1);
            for (std::size_t i = 0; i < kept.size(); ++i) remap[kept[i]] = static_cast<std::int64_t>(i);
            ConcaveModular g;
            g.n = kept.size();
            for (const auto& grp : f.groups) {
              ConcaveModular::Group h{grp.scale, {}};
              for (auto [e, w] : grp.weights) {
                if (remap[e] >= 0) h.weights.emplace_back(static_cast<Element>(remap[e]), w);
              }
              g.groups.push_back(std::move(h));
            }
            return Objective(std::move(g));
          },
          [&](const TabulatedFunction& f) {
            TabulatedFunction g;
            g.n = kept.size();
            g.values.resize(std::size_t{1} << g.n);
            for (std::size_t mask = 0; mask < g.values.size(); ++mask) {
              std::size_t full = 0;
              for (std::size_t i = 0; i < kept.size(); ++i) {
                if (mask >> i & 1U) full |= std::size_t{1} << kept[i];
              }
              g.values[mask] = f.values[full];
            }
            return Objective(std::move(g));
          },
      },
      family_);
}

ObjectiveState::ObjectiveState(const Objective* objective)
    : objective_(objective), member_(objective->size(), false) {
  std::visit(Overloaded{
                 [&](const WeightedCoverage& f) { aux_.assign(f.universe_weights.size(), 0.0); },
                 [&](const FacilityLocation& f) { aux_.assign(f.customers, 0.0); },
                 [&](const ConcaveModular& f) { aux_.assign(f.groups.size(), 0.0); },
                 [&](const TabulatedFunction& f) {
                   aux_.assign(1, 0.0);
                   value_ = f.values[0];
                 },
             },
             objective_->family_);
}

double ObjectiveState::gain(Element e) const {
  if (member_[e]) return 0.0;
  return std::visit(
      Overloaded{
          [&](const WeightedCoverage& f) {
            double g = 0.0;
            for (auto u : f.covers[e]) {
              if (aux_[u] == 0.0) g += f.universe_weights[u];
            }
            return g;
          },
          [&](const FacilityLocation& f) {
            double g = 0.0;
            for (std::size_t u = 0; u < f.customers; ++u) {
              double s = f.sim(u, e);
              if (s > aux_[u]) g += s - aux_[u];
            }
            return g;
          },
          [&](const ConcaveModular& f) {
            double g = 0.0;
            for (auto [j, w] : objective_->by_element_[e]) {
              double before = aux_[j];
              g += f.groups[j].scale * (std::sqrt(before + w) - std::sqrt(before));
            }
            return g;
          },
          [&](const TabulatedFunction& f) {
            auto mask = static_cast<std::size_t>(aux_[0]);
            return f.values[mask | (std::size_t{1} << e)] - f.values[mask];
          },
      },
      objective_->family_);
}

void ObjectiveState::add(Element e) {
  if (member_[e]) return;
  value_ += gain(e);
  member_[e] = true;
  ++size_;
  last_queried_ = -1;
  std::visit(Overloaded{
                 [&](const WeightedCoverage& f) {
                   for (auto u : f.covers[e]) aux_[u] += 1.0;
                 },
                 [&](const FacilityLocation& f) {
                   for (std::size_t u = 0; u < f.customers; ++u) {
                     aux_[u] = std::max(aux_[u], f.sim(u, e));
                   }
                 },
                 [&](const ConcaveModular&) {
                   for (auto [j, w] : objective_->by_element_[e]) aux_[j] += w;
                 },
                 [&](const TabulatedFunction& f) {
                   auto mask = static_cast<std::size_t>(aux_[0]) | (std::size_t{1} << e);
                   aux_[0] = static_cast<double>(mask);
                   value_ = f.values[mask];
                 },
             },
             objective_->family_);
}

}  // namespace subknap
