// Copyright 2026 The vrmccfr Authors
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

#ifndef VRMCCFR_RNG_HPP_
#define VRMCCFR_RNG_HPP_

#include <cstdint>
#include <limits>

namespace vrmccfr {

// SplitMix64 stream addressed by (seed, a, b, c). Distinct addresses give
// independent, reproducible streams, so a trajectory's draws depend only on
// (seed, iteration, player) and not on how much randomness was used before.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t a = 0,
                      std::uint64_t b = 0, std::uint64_t c = 0) {
    state_ = mix(mix(mix(mix(seed) ^ a) ^ (b + 0x632be59bd9b4e019ull)) ^
                 (c + 0x8cb92ba72f3d8dd7ull));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  // Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

 private:
  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  std::uint64_t state_;
};

}  // namespace vrmccfr

#endif  // VRMCCFR_RNG_HPP_
