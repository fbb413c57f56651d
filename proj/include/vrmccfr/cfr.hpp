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

#ifndef VRMCCFR_CFR_HPP_
#define VRMCCFR_CFR_HPP_

#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "vrmccfr/game.hpp"
#include "vrmccfr/strategy.hpp"
#include "vrmccfr/tables.hpp"

namespace vrmccfr {

struct CfValues {
  double value = 0.0;                 // v_i(sigma, I)
  std::vector<double> action_values;  // v_i(sigma, I, a)
};

struct CfValueReport {
  Player player = Player::kP1;
  double root_value = 0.0;  // expected utility of the whole game to player
  std::unordered_map<InfoStateKey, CfValues, InfoStateKeyHash> info_sets;
  // Expected utility u_i^sigma(h) of the subgame below every history h.
  // Left empty when not requested.
  std::unordered_map<History, double, HistoryHash> history_values;
};

// Exact counterfactual values of `player` under `sigma` by full traversal,
// chance handled in expectation.
CfValueReport exact_values(const Game& game, const Strategy& sigma,
                           Player player, bool record_histories = true);

enum class Averaging { kUniform, kLinear };

struct CfrStores {
  RegretStore regrets;
  AvgStrategyStore average;
};

using RegretDeltas =
    std::unordered_map<InfoStateKey, std::vector<double>, InfoStateKeyHash>;

// One full-tree iteration t >= 1. Returns the instantaneous regrets r^t that
// were applied, keyed by information set. `plus` selects regret matching+;
// `alternating` updates P1 then P2 with P2 seeing P1's fresh strategy,
// otherwise both players are updated against the same profile.
RegretDeltas cfr_iteration(const Game& game, CfrStores& stores, std::int64_t t,
                           bool plus, bool alternating, Averaging averaging);

struct CfrOptions {
  bool plus = false;
  bool alternating = false;
  Averaging averaging = Averaging::kUniform;

  static CfrOptions vanilla() { return {}; }
  static CfrOptions cfr_plus() {
    return {true, true, Averaging::kLinear};
  }
};

class CfrSolver {
 public:
  CfrSolver(std::shared_ptr<const Game> game, CfrOptions options);

  void iteration();
  void run(std::int64_t iterations) {
    for (std::int64_t i = 0; i < iterations; ++i) iteration();
  }

  std::int64_t iterations() const { return iterations_; }
  const Game& game() const { return *game_; }
  const CfrStores& stores() const { return stores_; }
  const RegretDeltas& last_deltas() const { return last_deltas_; }
  AverageStrategy average_strategy() const {
    return AverageStrategy(stores_.average);
  }
  CurrentStrategy current_strategy() const {
    return CurrentStrategy(stores_.regrets);
  }

 private:
  std::shared_ptr<const Game> game_;
  CfrOptions options_;
  CfrStores stores_;
  RegretDeltas last_deltas_;
  std::int64_t iterations_ = 0;
};

}  // namespace vrmccfr

#endif  // VRMCCFR_CFR_HPP_
