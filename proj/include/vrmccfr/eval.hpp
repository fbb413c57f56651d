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

#ifndef VRMCCFR_EVAL_HPP_
#define VRMCCFR_EVAL_HPP_

#include <cstdint>

#include "vrmccfr/game.hpp"
#include "vrmccfr/mccfr.hpp"
#include "vrmccfr/strategy.hpp"

namespace vrmccfr {

struct BestResponse {
  double value = 0.0;      // player's expected utility when best responding
  TabularStrategy policy;  // pure, defined on the player's information sets
};

// Exact best response of `player` against the other player's part of
// `profile`. Ties go to the lowest action id.
BestResponse best_response(const Game& game, const Strategy& profile,
                           Player player);

struct ExploitabilityRecord {
  std::int64_t iteration = 0;
  double br_value_p1 = 0.0;
  double br_value_p2 = 0.0;
  double exploitability = 0.0;  // (br_value_p1 + br_value_p2) / 2, chips
};

ExploitabilityRecord exploitability(const Game& game, const Strategy& profile,
                                    std::int64_t iteration = 0);

struct VarianceRecord {
  std::int64_t iteration = 0;
  double mean_variance = 0.0;
  std::size_t pairs = 0;  // (I, a) pairs that were probed
};

struct ProbeOptions {
  int probes = 1000;
  std::uint64_t seed = 0;
  // Every probe reuses probe 0's random stream (degenerate check).
  bool identical_streams = false;
};

// For every node of `visited` where player i acts, samples `probes`
// continuations from that history, evaluates the estimator (given baseline
// and bootstrap switch) and returns the mean over (I, a) of the sample
// variance of v(sigma, I, a | z). Reads only.
VarianceRecord variance_probe(const Game& game, const Trajectory& visited,
                              Player i, const Strategy& sigma,
                              const SamplingPolicy& xi,
                              const BaselineProvider& baseline, bool bootstrap,
                              const ProbeOptions& options);

// Same probe using the estimator currently active in `solver`.
VarianceRecord variance_probe(const McSolver& solver,
                              const Trajectory& visited, Player i,
                              const ProbeOptions& options);

}  // namespace vrmccfr

#endif  // VRMCCFR_EVAL_HPP_
