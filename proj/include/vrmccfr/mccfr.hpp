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

#ifndef VRMCCFR_MCCFR_HPP_
#define VRMCCFR_MCCFR_HPP_

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "vrmccfr/cfr.hpp"
#include "vrmccfr/game.hpp"
#include "vrmccfr/rng.hpp"
#include "vrmccfr/strategy.hpp"
#include "vrmccfr/tables.hpp"

namespace vrmccfr {

// One non-terminal history on a sampled path, with the quantities of the
// forward pass: sigma and xi at the node, and q / reach products of the
// history itself (before its action).
struct TrajectoryNode {
  History history;
  Player actor = Player::kChance;
  int action = 0;                  // sampled action id
  std::vector<double> sigma;       // sigma(h, .), chance distribution at chance
  std::vector<double> xi;          // xi(h, .)
  std::vector<int> codes;          // game-wide action codes at h
  double q = 1.0;                  // q(h)
  std::array<double, 3> reach{1.0, 1.0, 1.0};  // pi_1(h), pi_2(h), pi_c(h)
  std::array<InfoStateKey, 2> keys;            // I_1(h), I_2(h)

  double pi_own(Player i) const { return reach[index_of(i)]; }
  double pi_opp(Player i) const {
    return reach[index_of(opponent_of(i))] * reach[index_of(Player::kChance)];
  }
  const InfoStateKey& key(Player i) const { return keys[index_of(i)]; }
  int num_actions() const { return static_cast<int>(sigma.size()); }
};

struct Trajectory {
  std::vector<TrajectoryNode> nodes;  // root first
  History terminal;
  double q_terminal = 1.0;
  std::array<double, 3> reach_terminal{1.0, 1.0, 1.0};
  std::array<double, 2> utility{0.0, 0.0};

  double utility_for(Player i) const { return utility[index_of(i)]; }
};

// Samples z ~ xi from the root, recording sigma-reach and q prefix products.
// One uniform draw per node, root first.
Trajectory sample_trajectory(const Game& game, const Strategy& sigma,
                             const SamplingPolicy& xi, CounterRng& rng);

// The path to a given terminal history with the same bookkeeping as a
// sampled one.
Trajectory trajectory_along(const Game& game, const History& terminal,
                            const Strategy& sigma, const SamplingPolicy& xi);

// Keeps nodes [0, depth) of `prefix` and samples a fresh continuation from
// prefix.nodes[depth].history.
Trajectory resample_from(const Game& game, const Trajectory& prefix,
                         std::size_t depth, const Strategy& sigma,
                         const SamplingPolicy& xi, CounterRng& rng);

// Plain sampled counterfactual value pi_-i(h) u_i^sigma(h, z) / q(z); zero
// when h is not a prefix of z.
double sampled_cf_value(const Trajectory& traj, const History& h, Player i);

enum class BaselineKind { kNone, kLearnedStateAction, kLearnedState, kOracle };

struct BaselineMode {
  BaselineKind kind = BaselineKind::kNone;
  bool bootstrap = true;
};

// Supplies b(h, a) for every action at a trajectory node, from the point of
// view of the updating player.
class BaselineProvider {
 public:
  virtual ~BaselineProvider() = default;
  virtual void values(const TrajectoryNode& node, Player i,
                      std::span<double> out) const = 0;
};

class ZeroBaseline final : public BaselineProvider {
 public:
  void values(const TrajectoryNode&, Player, std::span<double> out) const
      override;
};

// Reads the learned store at I_i(h): per action code, or the scalar state
// value for every action when state_only is set.
class LearnedBaseline final : public BaselineProvider {
 public:
  LearnedBaseline(const BaselineStore& store, bool state_only)
      : store_(&store), state_only_(state_only) {}
  void values(const TrajectoryNode& node, Player i,
              std::span<double> out) const override;

 private:
  const BaselineStore* store_;
  bool state_only_;
};

// b*(h, a) = u_i^sigma(ha), keyed by history and exact for the profile it
// was computed against.
class OracleBaseline final : public BaselineProvider {
 public:
  OracleBaseline(const Game& game, const Strategy& sigma, Player i);
  void values(const TrajectoryNode& node, Player i,
              std::span<double> out) const override;
  double value(const History& h) const;
  Player player() const { return player_; }

 private:
  Player player_;
  std::unordered_map<History, double, HistoryHash> values_;
};

// Estimates at one trajectory node produced by the backward pass.
struct NodeEstimate {
  std::vector<double> action_values;  // u^b(sigma, h, a | z)
  double value = 0.0;                 // u^b(sigma, h | z)
  double raw_value = 0.0;             // u(sigma, h | z), no baseline
  // Value received from the sampled child; the bootstrapped child estimate
  // when bootstrapping, the raw sampled value otherwise.
  double child_value = 0.0;
};

// v^b(sigma, I, a | z) = pi_-i(h) / q(h) * u^b(sigma, h, a | z) for all a.
std::vector<double> counterfactual_estimates(const TrajectoryNode& node,
                                             const NodeEstimate& est,
                                             Player i);

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Computes the estimates of every node at depth >= stop, longest history
// first, without touching any table. visit(depth, node, estimate) is called
// in that order. With bootstrap off, sampled children pass up their raw
// values and the baseline only enters the node's own action values.
template <typename Visitor>
void walk_backward(const Trajectory& traj, Player i,
                   const BaselineProvider& baseline, bool bootstrap,
                   std::size_t stop, Visitor&& visit) {
  double chain = traj.utility_for(i);
  double raw_chain = chain;
  std::vector<double> b;
  for (std::size_t d = traj.nodes.size(); d-- > stop;) {
    const TrajectoryNode& node = traj.nodes[d];
    const int n = node.num_actions();
    const int s = node.action;
    b.assign(n, 0.0);
    baseline.values(node, i, b);
    NodeEstimate est;
    est.action_values.resize(n);
    est.child_value = bootstrap ? chain : raw_chain;
    double value = 0.0;
    double raw_value = 0.0;
    for (int a = 0; a < n; ++a) {
      double u = b[a];
      double raw = 0.0;
      if (a == s) {
        u = b[a] + (est.child_value - b[a]) / node.xi[a];
        raw = raw_chain / node.xi[a];
      }
      est.action_values[a] = u;
      value += node.sigma[a] * u;
      raw_value += node.sigma[a] * raw;
    }
    est.value = value;
    est.raw_value = raw_value;
    visit(d, node, est);
    chain = value;
    raw_chain = raw_value;
  }
}

struct McStores {
  RegretStore regrets;
  AvgStrategyStore average;
  BaselineStore baselines;
};

struct BackwardPassOptions {
  RegretUpdate regret_update = RegretUpdate::kSum;
  double iteration_weight = 1.0;
  double alpha = 0.5;
  BaselineMode mode;
};

// Regret, average-strategy and baseline updates for player i along one
// sampled trajectory. All estimates are computed before any table is
// written, so a non-finite value aborts the update with NumericError and
// leaves the stores untouched.
void backward_pass(const Trajectory& traj, McStores& stores,
                   const BaselineProvider& baseline, Player i,
                   const BackwardPassOptions& options);

struct McOptions {
  RegretUpdate regret_update = RegretUpdate::kSum;
  Averaging averaging = Averaging::kUniform;
  BaselineMode baseline;
  double alpha = 0.5;
  std::uint64_t seed = 0;
  // Oracle baselines need a full traversal per update; refuse larger games.
  std::size_t oracle_history_limit = 200000;

  static McOptions mccfr() { return {}; }
  static McOptions mccfr_plus() {
    McOptions o;
    o.regret_update = RegretUpdate::kPlus;
    o.averaging = Averaging::kLinear;
    return o;
  }
  static McOptions vr_mccfr() {
    McOptions o;
    o.baseline = {BaselineKind::kLearnedStateAction, true};
    return o;
  }
  static McOptions vr_mccfr_plus() {
    McOptions o = mccfr_plus();
    o.baseline = {BaselineKind::kLearnedStateAction, true};
    return o;
  }
};

// Outcome-sampling MCCFR with optional control-variate baselines. Each
// iteration samples one trajectory per player (P1 first) and updates that
// player's regrets, average strategy and baselines.
class McSolver {
 public:
  using Observer = std::function<void(const Trajectory&, Player)>;

  McSolver(std::shared_ptr<const Game> game, McOptions options);
  McSolver(const McSolver&) = delete;
  McSolver& operator=(const McSolver&) = delete;

  // `before_update`, when set, sees each trajectory after sampling and before
  // the stores change; it may call the const accessors below.
  void iteration(const Observer& before_update = {});
  void run(std::int64_t iterations) {
    for (std::int64_t t = 0; t < iterations; ++t) iteration();
  }

  std::int64_t iterations() const { return iterations_; }
  const Game& game() const { return *game_; }
  std::shared_ptr<const Game> game_ptr() const { return game_; }
  const McOptions& options() const { return options_; }
  const McStores& stores() const { return stores_; }
  McStores& mutable_stores() { return stores_; }
  const SamplingPolicy& sampling() const { return sampling_; }

  CurrentStrategy current_strategy() const {
    return CurrentStrategy(stores_.regrets);
  }
  AverageStrategy average_strategy() const {
    return AverageStrategy(stores_.average);
  }
  // Estimator baseline for the traversal of player i in progress.
  const BaselineProvider& active_baseline(Player i) const;

 private:
  Trajectory sample(Player i);
  void update(const Trajectory& traj, Player i);

  std::shared_ptr<const Game> game_;
  McOptions options_;
  McStores stores_;
  UniformSampling sampling_;
  ZeroBaseline zero_;
  LearnedBaseline learned_;
  std::optional<OracleBaseline> oracle_;
  std::int64_t iterations_ = 0;
};

}  // namespace vrmccfr

#endif  // VRMCCFR_MCCFR_HPP_
