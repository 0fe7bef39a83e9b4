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

#ifndef SUBKNAP_GENERATE_HPP_
#define SUBKNAP_GENERATE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "subknap/oracle.hpp"

namespace subknap {

enum class Family { kCoverage, kFacility, kConcaveModular };

Family parse_family(std::string_view name);  // throws InputError
std::string_view family_name(Family family);

struct GenParams {
  Family family = Family::kCoverage;
  std::size_t n = 12;
  std::uint64_t seed = 0;
  // Costs are drawn from (0, cost_max] before normalization.
  double cost_max = 0.5;
  // Make costs track singleton values: cost ~ cost_max * (value / max value)
  // blended with `noise` of uniform jitter.
  bool adversarial = false;
  double noise = 0.2;
  // Small integer weights, so objective values are exact in doubles.
  bool integer_weights = false;
  // Family shape; zero picks a default from n.
  std::size_t universe = 0;   // coverage items
  std::size_t cover_size = 0; // coverage: max items per element
  std::size_t customers = 0;  // facility
  std::size_t groups = 0;     // concave_modular
};

// Deterministic in the parameters.
Instance generate(const GenParams& params);

}  // namespace subknap

#endif  // SUBKNAP_GENERATE_HPP_
