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

#ifndef SUBKNAP_IO_HPP_
#define SUBKNAP_IO_HPP_

#include <string>

#include "json.hpp"
#include "subknap/knapsack.hpp"
#include "subknap/verify.hpp"

namespace subknap {

using Json = nlohmann::ordered_json;

// Instance files:
//   {"n": int, "costs": [real], "capacity": real (default 1),
//    "objective": {"type": "coverage", "universe_weights": [real],
//                  "covers": [[int]]}
//               | {"type": "facility", "customers": int,
//                  "similarity": [[real]]}          (customers rows of n)
//               | {"type": "concave_modular",
//                  "groups": [{"scale": real, "weights": [[int, real]]}]}
//               | {"type": "table", "values": [real]}}   (2^n entries, n <= 20)
// Costs are divided by the capacity and elements that cannot fit are dropped.
// The table type stores any set function and exists for testing; it is not
// checked for submodularity. Malformed documents throw InputError.
Instance instance_from_json(const Json& doc, std::string name = {});
Instance load_instance(const std::string& path);

// Writes normalized costs with capacity 1.
Json instance_to_json(const Instance& instance);
void save_instance(const std::string& path, const Instance& instance);

Json to_json(const SparseFractionalPoint& x);
Json to_json(const RoundingTranscript& transcript);
Json to_json(const PhaseTrace& phase);
Json to_json(const OptPartition& partition);
Json to_json(const AnalysisTrace& trace);
// Phase traces and the analysis record are included when `with_traces`.
Json to_json(const KnapsackResult& result, bool with_traces);
Json to_json(const CheckOutcome& check);
Json to_json(const VerifyReport& report, bool with_traces = false);

}  // namespace subknap

#endif  // SUBKNAP_IO_HPP_
