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

#include "vrmccfr/cfr.hpp"

#include <stdexcept>
#include <utility>

namespace vrmccfr {
namespace {

class ValueWalker {
 public:
  ValueWalker(const Game& game, const Strategy& sigma, Player player,
              CfValueReport& report, bool record)
      : game_(game), sigma_(sigma), player_(player), report_(report),
        record_(record) {}

  // Returns u_i^sigma(h); pi_opp is the chance-and-opponent reach of h.
  double walk(const History& h, double pi_opp) {
    if (game_.is_terminal(h)) {
      const double u = game_.utility(h, player_);
      if (record_) report_.history_values.emplace(h, u);
      return u;
    }
    const Player actor = game_.current_player(h);
    const int n = game_.num_actions(h);
    std::vector<double> probs;
    InfoStateKey key;
    if (actor == Player::kChance) {
      probs = game_.chance_probabilities(h);
    } else {
      key = game_.info_state_key(h, actor);
      probs = sigma_.probabilities(key, static_cast<std::size_t>(n));
    }
    std::vector<double> child(n);
    double value = 0.0;
    for (int a = 0; a < n; ++a) {
      const double child_reach = actor == player_ ? pi_opp : pi_opp * probs[a];
      child[a] = walk(h.child(a), child_reach);
      value += probs[a] * child[a];
    }
    if (actor == player_) {
      CfValues& cf = report_.info_sets[key];
      if (cf.action_values.empty()) cf.action_values.assign(n, 0.0);
      for (int a = 0; a < n; ++a) cf.action_values[a] += pi_opp * child[a];
      cf.value += pi_opp * value;
    }
    if (record_) report_.history_values.emplace(h, value);
    return value;
  }

 private:
  const Game& game_;
  const Strategy& sigma_;
  Player player_;
  CfValueReport& report_;
  bool record_;
};

// One regret-accumulating pass for `player` against the strategy implied by
// the (not yet modified) regret table.
class CfrPass {
 public:
  CfrPass(const Game& game, CfrStores& stores, Player player,
          double iteration_weight, RegretDeltas& deltas)
      : game_(game), stores_(stores), sigma_(stores.regrets), player_(player),
        iteration_weight_(iteration_weight), deltas_(deltas) {}

  double walk(const History& h, double pi_own, double pi_opp) {
    if (game_.is_terminal(h)) return game_.utility(h, player_);
    const Player actor = game_.current_player(h);
    const int n = game_.num_actions(h);
    if (actor == Player::kChance) {
      const std::vector<double> probs = game_.chance_probabilities(h);
      double value = 0.0;
      for (int a = 0; a < n; ++a) {
        value += probs[a] * walk(h.child(a), pi_own, pi_opp * probs[a]);
      }
      return value;
    }
    const InfoStateKey key = game_.info_state_key(h, actor);
    const std::vector<double> sigma =
        sigma_.probabilities(key, static_cast<std::size_t>(n));
    if (actor != player_) {
      double value = 0.0;
      for (int a = 0; a < n; ++a) {
        value += sigma[a] * walk(h.child(a), pi_own, pi_opp * sigma[a]);
      }
      return value;
    }
    std::vector<double> child(n);
    double value = 0.0;
    for (int a = 0; a < n; ++a) {
      child[a] = walk(h.child(a), pi_own * sigma[a], pi_opp);
      value += sigma[a] * child[a];
    }
    auto [it, inserted] = deltas_.try_emplace(key);
    if (inserted) it->second.assign(n, 0.0);
    for (int a = 0; a < n; ++a) it->second[a] += pi_opp * (child[a] - value);
    stores_.average.accumulate(key, sigma, pi_own, iteration_weight_);
    return value;
  }

 private:
  const Game& game_;
  CfrStores& stores_;
  CurrentStrategy sigma_;
  Player player_;
  double iteration_weight_;
  RegretDeltas& deltas_;
};

void apply_deltas(const RegretDeltas& deltas, RegretStore& regrets,
                  bool plus) {
  for (const auto& [key, r] : deltas) {
    regrets.accumulate(key, r, plus ? RegretUpdate::kPlus : RegretUpdate::kSum);
  }
}

}  // namespace

CfValueReport exact_values(const Game& game, const Strategy& sigma,
                           Player player, bool record_histories) {
  if (player == Player::kChance) {
    throw ContractError("exact_values: chance has no counterfactual values");
  }
  CfValueReport report;
  report.player = player;
  ValueWalker walker(game, sigma, player, report, record_histories);
  report.root_value = walker.walk(History{}, 1.0);
  return report;
}

RegretDeltas cfr_iteration(const Game& game, CfrStores& stores, std::int64_t t,
                           bool plus, bool alternating, Averaging averaging) {
  if (t < 1) throw ContractError("cfr_iteration: iteration index must be >= 1");
  const double weight =
      averaging == Averaging::kLinear ? static_cast<double>(t) : 1.0;
  RegretDeltas all;
  if (alternating) {
    for (Player p : kDecisionPlayers) {
      RegretDeltas deltas;
      CfrPass(game, stores, p, weight, deltas).walk(History{}, 1.0, 1.0);
      apply_deltas(deltas, stores.regrets, plus);
      all.merge(deltas);
    }
  } else {
    for (Player p : kDecisionPlayers) {
      CfrPass(game, stores, p, weight, all).walk(History{}, 1.0, 1.0);
    }
    apply_deltas(all, stores.regrets, plus);
  }
  return all;
}

CfrSolver::CfrSolver(std::shared_ptr<const Game> game, CfrOptions options)
    : game_(std::move(game)), options_(options) {
  if (!game_) throw std::invalid_argument("CfrSolver: null game");
}

void CfrSolver::iteration() {
  ++iterations_;
  last_deltas_ = cfr_iteration(*game_, stores_, iterations_, options_.plus,
                               options_.alternating, options_.averaging);
}

}  // namespace vrmccfr
