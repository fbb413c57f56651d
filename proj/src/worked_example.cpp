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

#include "vrmccfr/worked_example.hpp"

#include <map>

#include "vrmccfr/mccfr.hpp"
#include "vrmccfr/poker.hpp"

namespace vrmccfr {

std::vector<WorkedValue> kuhn_worked_example() {
  const auto game = build_kuhn();
  History z;
  for (const char* label : {"K", "Q", "B", "C"}) {
    z = game->apply_action(z, label);
  }

  TabularStrategy sigma;
  sigma.set({Player::kP1, "K?"}, {1.0 / 3.0, 2.0 / 3.0});
  sigma.set({Player::kP2, "?QB"}, {0.75, 0.25});

  using P = LimitPokerGame;
  BaselineStore store(game->num_action_codes());
  store.set(Player::kP1, {Player::kP1, "K?B"}, P::kCall, 1.0);
  store.set(Player::kP1, {Player::kP1, "K?B"}, P::kFold, -2.0);
  store.set(Player::kP1, {Player::kP1, "K?"}, P::kRaise, 0.5);
  store.set(Player::kP1, {Player::kP1, "K?"}, P::kCall, -1.0);
  const LearnedBaseline baseline(store, false);

  const UniformSampling xi;
  const Trajectory traj = trajectory_along(*game, z, sigma, xi);
  std::map<std::size_t, NodeEstimate> est;
  walk_backward(traj, Player::kP1, baseline, true, 0,
                [&](std::size_t d, const TrajectoryNode&,
                    const NodeEstimate& e) { est[d] = e; });

  // Depths: 0 deal P1, 1 deal P2, 2 P1 at KQ, 3 P2 at KQB.
  const TrajectoryNode& kq = traj.nodes[2];
  const std::vector<double> v = counterfactual_estimates(kq, est[2], Player::kP1);
  const double v_info = est[2].value * kq.pi_opp(Player::kP1) / kq.q;
  return {
      {"q(KQ)", kq.q, 1.0 / 6.0},
      {"q(KQB)", traj.nodes[3].q, 1.0 / 12.0},
      {"q(KQBC)", traj.q_terminal, 1.0 / 24.0},
      {"u(KQB,C)", est[3].action_values[1], 3.0},
      {"u(KQB,F)", est[3].action_values[0], -2.0},
      {"u(KQB)", est[3].value, -0.75},
      {"u(KQ,B)", est[2].action_values[1], -2.0},
      {"u(KQ,C)", est[2].action_values[0], -1.0},
      {"u(KQ)", est[2].value, -5.0 / 3.0},
      {"v(K?,B)", v[1], -2.0},
      {"v(K?,C)", v[0], -1.0},
      {"r(K?,B)", v[1] - v_info, -1.0 / 3.0},
      {"r(K?,C)", v[0] - v_info, 2.0 / 3.0},
  };
}

}  // namespace vrmccfr
