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

#include "vrmccfr/mccfr.hpp"

#include <cmath>
#include <string>
#include <utility>

namespace vrmccfr {
namespace {

int sample_index(std::span<const double> probs, double u) {
  double cumulative = 0.0;
  for (std::size_t a = 0; a + 1 < probs.size(); ++a) {
    cumulative += probs[a];
    if (u < cumulative) return static_cast<int>(a);
  }
  return static_cast<int>(probs.size()) - 1;
}

// `choose(node)` returns the action id taken at each node.
template <typename Chooser>
void continue_path(const Game& game, Trajectory& traj, History h, double q,
                   std::array<double, 3> reach, const Strategy& sigma,
                   const SamplingPolicy& xi, Chooser&& choose) {
  while (!game.is_terminal(h)) {
    TrajectoryNode node;
    node.history = h;
    node.actor = game.current_player(h);
    node.codes = game.action_codes(h);
    const std::size_t n = node.codes.size();
    node.keys[0] = game.info_state_key(h, Player::kP1);
    node.keys[1] = game.info_state_key(h, Player::kP2);
    if (node.actor == Player::kChance) {
      node.sigma = game.chance_probabilities(h);
    } else {
      node.sigma.resize(n);
      sigma.probabilities(node.key(node.actor), node.sigma);
    }
    node.xi.resize(n);
    xi.probabilities(game, h, node.xi);
    node.q = q;
    node.reach = reach;
    const int a = choose(node);
    node.action = a;
    q *= node.xi[a];
    reach[index_of(node.actor)] *= node.sigma[a];
    h = h.child(a);
    traj.nodes.push_back(std::move(node));
  }
  traj.terminal = h;
  traj.q_terminal = q;
  traj.reach_terminal = reach;
  traj.utility = {game.utility(h, Player::kP1), game.utility(h, Player::kP2)};
}

void continue_sampling(const Game& game, Trajectory& traj, History h, double q,
                       std::array<double, 3> reach, const Strategy& sigma,
                       const SamplingPolicy& xi, CounterRng& rng) {
  continue_path(game, traj, h, q, reach, sigma, xi,
                [&](const TrajectoryNode& node) {
                  return sample_index(node.xi, rng.uniform());
                });
}

}  // namespace

Trajectory trajectory_along(const Game& game, const History& terminal,
                            const Strategy& sigma, const SamplingPolicy& xi) {
  if (!game.is_terminal(terminal)) {
    throw ContractError("trajectory_along: history is not terminal");
  }
  Trajectory traj;
  continue_path(game, traj, History{}, 1.0, {1.0, 1.0, 1.0}, sigma, xi,
                [&](const TrajectoryNode& node) {
                  return terminal[node.history.size()];
                });
  return traj;
}

Trajectory sample_trajectory(const Game& game, const Strategy& sigma,
                             const SamplingPolicy& xi, CounterRng& rng) {
  Trajectory traj;
  continue_sampling(game, traj, History{}, 1.0, {1.0, 1.0, 1.0}, sigma, xi,
                    rng);
  return traj;
}

Trajectory resample_from(const Game& game, const Trajectory& prefix,
                         std::size_t depth, const Strategy& sigma,
                         const SamplingPolicy& xi, CounterRng& rng) {
  if (depth >= prefix.nodes.size()) {
    throw ContractError("resample_from: depth beyond the sampled path");
  }
  Trajectory traj;
  traj.nodes.assign(prefix.nodes.begin(), prefix.nodes.begin() + depth);
  const TrajectoryNode& start = prefix.nodes[depth];
  continue_sampling(game, traj, start.history, start.q, start.reach, sigma, xi,
                    rng);
  return traj;
}

double sampled_cf_value(const Trajectory& traj, const History& h, Player i) {
  if (!h.is_prefix_of(traj.terminal)) return 0.0;
  double pi_opp = 0.0;
  double tail = 1.0;  // pi^sigma(h, z)
  const std::size_t depth = h.size();
  if (depth == traj.nodes.size()) {
    const auto& r = traj.reach_terminal;
    pi_opp = r[index_of(opponent_of(i))] * r[index_of(Player::kChance)];
  } else {
    pi_opp = traj.nodes[depth].pi_opp(i);
    for (std::size_t d = depth; d < traj.nodes.size(); ++d) {
      tail *= traj.nodes[d].sigma[traj.nodes[d].action];
    }
  }
  return pi_opp * tail * traj.utility_for(i) / traj.q_terminal;
}

void ZeroBaseline::values(const TrajectoryNode&, Player,
                          std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
}

void LearnedBaseline::values(const TrajectoryNode& node, Player i,
                             std::span<double> out) const {
  const InfoStateKey& key = node.key(i);
  if (state_only_) {
    std::fill(out.begin(), out.end(), store_->state_value(i, key));
    return;
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] = store_->value(i, key, node.codes[a]);
  }
}

OracleBaseline::OracleBaseline(const Game& game, const Strategy& sigma,
                               Player i)
    : player_(i),
      values_(exact_values(game, sigma, i, true).history_values) {}

double OracleBaseline::value(const History& h) const {
  auto it = values_.find(h);
  if (it == values_.end()) {
    throw ContractError("OracleBaseline: unknown history");
  }
  return it->second;
}

void OracleBaseline::values(const TrajectoryNode& node, Player i,
                            std::span<double> out) const {
  if (i != player_) {
    throw ContractError("OracleBaseline: computed for the other player");
  }
  for (std::size_t a = 0; a < out.size(); ++a) {
    out[a] = value(node.history.child(static_cast<int>(a)));
  }
}

std::vector<double> counterfactual_estimates(const TrajectoryNode& node,
                                             const NodeEstimate& est,
                                             Player i) {
  const double pi_opp = node.pi_opp(i);
  std::vector<double> v(est.action_values.size());
  for (std::size_t a = 0; a < v.size(); ++a) {
    v[a] = est.action_values[a] * pi_opp / node.q;
  }
  return v;
}

void backward_pass(const Trajectory& traj, McStores& stores,
                   const BaselineProvider& baseline, Player i,
                   const BackwardPassOptions& options) {
  if (i == Player::kChance) {
    throw ContractError("backward_pass: chance does not update regrets");
  }
  struct Pending {
    std::size_t depth;
    NodeEstimate estimate;
  };
  std::vector<Pending> pending;
  pending.reserve(traj.nodes.size());
  walk_backward(traj, i, baseline, options.mode.bootstrap, 0,
                [&](std::size_t d, const TrajectoryNode&, NodeEstimate& est) {
                  pending.push_back({d, std::move(est)});
                });
  for (const Pending& p : pending) {
    bool finite = std::isfinite(p.estimate.value) &&
                  std::isfinite(p.estimate.raw_value);
    for (double u : p.estimate.action_values) finite = finite && std::isfinite(u);
    if (!finite) {
      throw NumericError("backward_pass: non-finite estimate at depth " +
                         std::to_string(p.depth) + ", history key '" +
                         traj.nodes[p.depth].key(i).observation + "'");
    }
  }

  const BaselineKind kind = options.mode.kind;
  for (const Pending& p : pending) {
    const TrajectoryNode& node = traj.nodes[p.depth];
    const NodeEstimate& est = p.estimate;
    if (node.actor == i) {
      const double pi_opp = node.pi_opp(i);
      const std::vector<double> v = counterfactual_estimates(node, est, i);
      const double v_info = est.value * pi_opp / node.q;
      std::vector<double> r(v.size());
      for (std::size_t a = 0; a < v.size(); ++a) r[a] = v[a] - v_info;
      const InfoStateKey& key = node.key(i);
      stores.regrets.accumulate(key, r, options.regret_update);
      stores.average.accumulate(key, node.sigma, node.pi_own(i) / node.q,
                                options.iteration_weight);
    }
    if (kind == BaselineKind::kLearnedStateAction) {
      stores.baselines.update(i, node.key(i), node.codes[node.action],
                              est.child_value, options.alpha);
    } else if (kind == BaselineKind::kLearnedState) {
      const double target =
          options.mode.bootstrap ? est.value : est.raw_value;
      stores.baselines.update_state(i, node.key(i), target, options.alpha);
    }
  }
}

McSolver::McSolver(std::shared_ptr<const Game> game, McOptions options)
    : game_(std::move(game)),
      options_(options),
      learned_(stores_.baselines,
               options.baseline.kind == BaselineKind::kLearnedState) {
  if (!game_) throw std::invalid_argument("McSolver: null game");
  if (!(options_.alpha > 0.0 && options_.alpha <= 1.0)) {
    throw std::invalid_argument("McSolver: alpha must lie in (0, 1]");
  }
  if (options_.baseline.kind == BaselineKind::kOracle &&
      game_->num_histories() > options_.oracle_history_limit) {
    throw std::invalid_argument(
        "McSolver: game too large for the oracle baseline");
  }
  stores_.baselines = BaselineStore(game_->num_action_codes());
}

const BaselineProvider& McSolver::active_baseline(Player i) const {
  switch (options_.baseline.kind) {
    case BaselineKind::kNone:
      return zero_;
    case BaselineKind::kLearnedStateAction:
    case BaselineKind::kLearnedState:
      return learned_;
    case BaselineKind::kOracle:
      if (!oracle_ || oracle_->player() != i) {
        throw ContractError("McSolver: no oracle baseline for this traversal");
      }
      return *oracle_;
  }
  return zero_;
}

Trajectory McSolver::sample(Player i) {
  const CurrentStrategy sigma = current_strategy();
  if (options_.baseline.kind == BaselineKind::kOracle) {
    oracle_.emplace(*game_, sigma, i);
  }
  CounterRng rng(options_.seed, static_cast<std::uint64_t>(iterations_),
                 static_cast<std::uint64_t>(index_of(i)));
  return sample_trajectory(*game_, sigma, sampling_, rng);
}

void McSolver::update(const Trajectory& traj, Player i) {
  BackwardPassOptions opts;
  opts.regret_update = options_.regret_update;
  opts.iteration_weight = options_.averaging == Averaging::kLinear
                              ? static_cast<double>(iterations_)
                              : 1.0;
  opts.alpha = options_.alpha;
  opts.mode = options_.baseline;
  backward_pass(traj, stores_, active_baseline(i), i, opts);
}

void McSolver::iteration(const Observer& before_update) {
  ++iterations_;
  for (Player i : kDecisionPlayers) {
    const Trajectory traj = sample(i);
    if (before_update) before_update(traj, i);
    update(traj, i);
  }
}

}  // namespace vrmccfr
