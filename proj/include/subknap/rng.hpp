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

#ifndef SUBKNAP_RNG_HPP_
#define SUBKNAP_RNG_HPP_

#include <cstdint>
#include <limits>

namespace subknap {

// Counter-based generator: output i is a SplitMix64 finalizer applied to
// (stream key, i). Streams derived with split() are independent, so parallel
// workers can be handed disjoint streams from one global seed.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed = 0, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + 0x632be59bd9b4e019ULL))) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  // Uniform in [0, 1) with 53 random bits; identical on every platform.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  CounterRng split(std::uint64_t stream) const {
    CounterRng child;
    child.key_ = mix(key_ ^ mix(stream + 0xd1b54a32d192ed03ULL));
    return child;
  }

  std::uint64_t counter() const { return counter_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace subknap

#endif  // SUBKNAP_RNG_HPP_
