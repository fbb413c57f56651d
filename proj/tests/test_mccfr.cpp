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

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>
#include <vector>

#include "doctest.h"
#include "estimators.hpp"
#include "vrmccfr/eval.hpp"
#include "vrmccfr/mccfr.hpp"
#include "vrmccfr/poker.hpp"
#include "vrmccfr/worked_example.hpp"

namespace vrmccfr {
namespace {

using P = LimitPokerGame;

History play(const Game& game, std::initializer_list<const char*> labels) {
  History h;
  for (const char* l : labels) h = game.apply_action(h, l);
  return h;
}

TabularStrategy random_profile(const Game& game, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  TabularStrategy out;
  for_each_history(game, [&](const History& h) {
    if (game.is_terminal(h)) return;
    const Player p = game.current_player(h);
    if (p == Player::kChance) return;
    const InfoStateKey key = game.info_state_key(h, p);
    if (out.table().count(key)) return;
    std::vector<double> probs(game.num_actions(h));
    double total = 0.0;
    for (double& x : probs) total += (x = u(rng));
    for (double& x : probs) x /= total;
    out.set(key, probs);
  });
  return out;
}

// A learned baseline table after some VR iterations on Kuhn.
BaselineStore trained_baselines(std::shared_ptr<const Game> game) {
  McSolver solver(game, McOptions::vr_mccfr());
  solver.run(500);
  return solver.stores().baselines;
}

struct WorkedSetup {
  std::shared_ptr<const LimitPokerGame> game = build_kuhn();
  TabularStrategy sigma;
  McStores stores;
  Trajectory traj;

  WorkedSetup() {
    sigma.set({Player::kP1, "K?"}, {1.0 / 3.0, 2.0 / 3.0});
    sigma.set({Player::kP2, "?QB"}, {0.75, 0.25});
    stores.baselines = BaselineStore(game->num_action_codes());
    auto& b = stores.baselines;
    b.set(Player::kP1, {Player::kP1, "K?B"}, P::kCall, 1.0);
    b.set(Player::kP1, {Player::kP1, "K?B"}, P::kFold, -2.0);
    b.set(Player::kP1, {Player::kP1, "K?"}, P::kRaise, 0.5);
    b.set(Player::kP1, {Player::kP1, "K?"}, P::kCall, -1.0);
    traj = trajectory_along(*game, play(*game, {"K", "Q", "B", "C"}), sigma,
                            UniformSampling{});
  }
};

TEST_CASE("worked kuhn iteration estimates") {
  WorkedSetup w;
  REQUIRE(w.traj.nodes.size() == 4);
  CHECK(std::abs(w.traj.nodes[2].q - 1.0 / 6.0) <= 1e-12);
  CHECK(std::abs(w.traj.nodes[3].q - 1.0 / 12.0) <= 1e-12);
  CHECK(std::abs(w.traj.q_terminal - 1.0 / 24.0) <= 1e-12);
  CHECK(std::abs(w.traj.nodes[3].pi_opp(Player::kP1) - 1.0 / 6.0) <= 1e-12);
  CHECK(w.traj.nodes[3].key(Player::kP1).observation == "K?B");

  const LearnedBaseline baseline(w.stores.baselines, false);
  std::map<std::size_t, NodeEstimate> est;
  walk_backward(w.traj, Player::kP1, baseline, true, 0,
                [&](std::size_t d, const TrajectoryNode&,
                    const NodeEstimate& e) { est[d] = e; });
  CHECK(std::abs(est[3].action_values[1] - 3.0) <= 1e-12);
  CHECK(std::abs(est[3].action_values[0] + 2.0) <= 1e-12);
  CHECK(std::abs(est[3].value + 0.75) <= 1e-12);
  CHECK(std::abs(est[2].action_values[1] + 2.0) <= 1e-12);
  CHECK(std::abs(est[2].action_values[0] + 1.0) <= 1e-12);
  CHECK(std::abs(est[2].value + 5.0 / 3.0) <= 1e-12);
  const std::vector<double> v =
      counterfactual_estimates(w.traj.nodes[2], est[2], Player::kP1);
  CHECK(std::abs(v[1] + 2.0) <= 1e-12);
  CHECK(std::abs(v[0] + 1.0) <= 1e-12);

  for (const WorkedValue& x : kuhn_worked_example()) {
    CHECK_MESSAGE(std::abs(x.computed - x.expected) <= 1e-12, x.name);
  }
}

TEST_CASE("worked kuhn iteration updates") {
  WorkedSetup w;
  const LearnedBaseline baseline(w.stores.baselines, false);
  BackwardPassOptions opts;
  opts.mode = {BaselineKind::kLearnedStateAction, true};
  backward_pass(w.traj, w.stores, baseline, Player::kP1, opts);

  // Regrets at K?: C then B.
  const auto r = w.stores.regrets.find({Player::kP1, "K?"});
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] - 2.0 / 3.0) <= 1e-12);
  CHECK(std::abs(r[1] + 1.0 / 3.0) <= 1e-12);
  // Only P1 decisions are updated.
  CHECK(w.stores.regrets.size() == 1);
  // Average weight pi_1 / q = 6.
  const auto avg = w.stores.average.find({Player::kP1, "K?"});
  CHECK(std::abs(avg[0] - 2.0) <= 1e-12);
  CHECK(std::abs(avg[1] - 4.0) <= 1e-12);
  // Baselines move half way to the sampled child values.
  const auto& b = w.stores.baselines;
  CHECK(b.value(Player::kP1, {Player::kP1, "K?B"}, P::kCall) == 1.5);
  CHECK(b.value(Player::kP1, {Player::kP1, "K?B"}, P::kFold) == -2.0);
  CHECK(b.value(Player::kP1, {Player::kP1, "K?"}, P::kRaise) ==
        doctest::Approx(0.5 * 0.5 + 0.5 * -0.75).epsilon(1e-15));
  CHECK(b.value(Player::kP1, {Player::kP1, "K?"}, P::kCall) == -1.0);
  CHECK(b.visits(Player::kP1, {Player::kP1, "K?"}, P::kRaise) == 1);
  CHECK(b.size(Player::kP2) == 0);
}

TEST_CASE("sampled counterfactual value") {
  WorkedSetup w;
  const History kq = play(*w.game, {"K", "Q"});
  // pi_-1(KQ) = 1/6, pi(KQ, z) = 2/3 * 1/4, u = 2, q(z) = 1/24.
  CHECK(sampled_cf_value(w.traj, kq, Player::kP1) ==
        doctest::Approx(1.0 / 6.0 * (2.0 / 3.0 * 0.25) * 2.0 * 24.0));
  CHECK(sampled_cf_value(w.traj, play(*w.game, {"K", "J"}), Player::kP1) ==
        0.0);
  CHECK(sampled_cf_value(w.traj, w.traj.terminal, Player::kP1) ==
        doctest::Approx(1.0 / 6.0 * 0.25 * 2.0 * 24.0));
}

TEST_CASE("non-finite estimates leave the stores untouched") {
  WorkedSetup w;
  w.stores.baselines.set(Player::kP1, {Player::kP1, "K?B"}, P::kCall, 1e308);
  const McStores before = w.stores;
  const LearnedBaseline baseline(w.stores.baselines, false);
  BackwardPassOptions opts;
  opts.mode = {BaselineKind::kLearnedStateAction, true};
  CHECK_THROWS_AS(backward_pass(w.traj, w.stores, baseline, Player::kP1, opts),
                  NumericError);
  CHECK(w.stores.regrets == before.regrets);
  CHECK(w.stores.average == before.average);
  CHECK(w.stores.baselines == before.baselines);
}

TEST_CASE("zero baseline reduces to the plain estimator") {
  const auto leduc = build_leduc();
  const TabularStrategy sigma = random_profile(*leduc, 4);
  const UniformSampling xi;
  const ZeroBaseline zero;
  for (int k = 0; k < 2000; ++k) {
    CounterRng rng(21, k);
    const Trajectory traj = sample_trajectory(*leduc, sigma, xi, rng);
    for (Player i : kDecisionPlayers) {
      for (bool bootstrap : {true, false}) {
        walk_backward(
            traj, i, zero, bootstrap, 0,
            [&](std::size_t, const TrajectoryNode& node,
                const NodeEstimate& est) {
              if (node.actor != i) return;
              const std::vector<double> v =
                  counterfactual_estimates(node, est, i);
              for (int a = 0; a < node.num_actions(); ++a) {
                CHECK(std::abs(v[a] - sampled_cf_value(
                                          traj, node.history.child(a), i)) <=
                      1e-12);
              }
              CHECK(std::abs(est.value * node.pi_opp(i) / node.q -
                             sampled_cf_value(traj, node.history, i)) <= 1e-12);
            });
      }
    }
  }
}

TEST_CASE("plain mode matches a reference outcome sampling implementation") {
  for (const auto& game : {make_game("kuhn"), make_game("leduc")}) {
    McSolver solver(game, McOptions::mccfr());
    testing::ReferenceOutcomeSampling reference(*game, 0);
    // Baseline none with bootstrap off is the same estimator.
    McOptions no_boot = McOptions::mccfr();
    no_boot.baseline.bootstrap = false;
    McSolver solver_nb(game, no_boot);
    for (int t = 0; t < 3000; ++t) {
      solver.iteration();
      solver_nb.iteration();
      reference.iteration();
    }
    CHECK(solver.stores().regrets.entries() == reference.regrets());
    CHECK(solver.stores().average.entries() == reference.average());
    CHECK(solver_nb.stores().regrets == solver.stores().regrets);
  }
}

TEST_CASE("estimates are unbiased") {
  const auto kuhn = build_kuhn();
  const ZeroBaseline zero;
  const BaselineStore trained = trained_baselines(kuhn);
  const LearnedBaseline learned(trained, false);
  const LearnedBaseline learned_state(trained, true);
  for (Player i : kDecisionPlayers) {
    const auto plain = testing::check_unbiased(*kuhn, UniformStrategy{}, i,
                                               zero, true, 20000, 1);
    CHECK(plain.fraction() >= 0.9);
    const auto boot = testing::check_unbiased(*kuhn, UniformStrategy{}, i,
                                              learned, true, 20000, 2);
    CHECK(boot.fraction() >= 0.9);
    const auto state = testing::check_unbiased(*kuhn, random_profile(*kuhn, 5),
                                               i, learned_state, false, 20000, 3);
    CHECK(state.fraction() >= 0.9);
  }
}

TEST_CASE("local expectation of the baseline-corrected values") {
  const auto kuhn = build_kuhn();
  const TabularStrategy sigma = random_profile(*kuhn, 6);
  const UniformSampling xi;
  // Arbitrary baseline values at every key.
  BaselineStore store(kuhn->num_action_codes());
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for_each_history(*kuhn, [&](const History& h) {
    if (kuhn->is_terminal(h)) return;
    for (Player i : kDecisionPlayers) {
      for (int code : kuhn->action_codes(h)) {
        store.set(i, kuhn->info_state_key(h, i), code, u(rng));
      }
    }
  });
  const LearnedBaseline baseline(store, false);
  const ZeroBaseline zero;
  for (Player i : kDecisionPlayers) {
    const CfValueReport exact = exact_values(*kuhn, sigma, i);
    for_each_history(*kuhn, [&](const History& h) {
      if (kuhn->is_terminal(h)) return;
      const int n = kuhn->num_actions(h);
      std::vector<double> with(n, 0.0), without(n, 0.0);
      // Every continuation z of h, weighted by its sampling probability.
      for_each_terminal(*kuhn, [&](const History& z) {
        if (!h.is_prefix_of(z)) return;
        const Trajectory traj = trajectory_along(*kuhn, z, sigma, xi);
        double weight = 1.0;
        for (std::size_t d = h.size(); d < z.size(); ++d) {
          weight *= traj.nodes[d].xi[traj.nodes[d].action];
        }
        for (auto [provider, out] :
             {std::pair{static_cast<const BaselineProvider*>(&baseline), &with},
              std::pair{static_cast<const BaselineProvider*>(&zero),
                        &without}}) {
          walk_backward(traj, i, *provider, true, h.size(),
                        [&](std::size_t d, const TrajectoryNode&,
                            const NodeEstimate& est) {
                          if (d != h.size()) return;
                          for (int a = 0; a < n; ++a) {
                            (*out)[a] += weight * est.action_values[a];
                          }
                        });
        }
      });
      for (int a = 0; a < n; ++a) {
        CHECK(with[a] == doctest::Approx(without[a]).epsilon(1e-12));
        CHECK(with[a] ==
              doctest::Approx(exact.history_values.at(h.child(a)))
                  .epsilon(1e-12));
      }
    });
  }
}

TEST_CASE("oracle baseline removes all variance") {
  const auto kuhn = build_kuhn();
  const TabularStrategy sigma = random_profile(*kuhn, 9);
  const UniformSampling xi;
  for (Player i : kDecisionPlayers) {
    const OracleBaseline oracle(*kuhn, sigma, i);
    // For every history h and action a: 1000 continuations through ha.
    for_each_terminal(*kuhn, [&](const History& z) {
      const Trajectory base = trajectory_along(*kuhn, z, sigma, xi);
      for (std::size_t d = 0; d < base.nodes.size(); ++d) {
        const TrajectoryNode& node = base.nodes[d];
        const int a = node.action;
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (int k = 0; k < 1000; ++k) {
          CounterRng rng(17, d, k);
          const Trajectory traj =
              d + 1 < base.nodes.size()
                  ? resample_from(*kuhn, base, d + 1, sigma, xi, rng)
                  : base;
          walk_backward(traj, i, oracle, true, d,
                        [&](std::size_t depth, const TrajectoryNode& at,
                            const NodeEstimate& est) {
                          if (depth != d) return;
                          for (int b = 0; b < at.num_actions(); ++b) {
                            CHECK(std::abs(est.action_values[b] -
                                           oracle.value(at.history.child(b))) <=
                                  1e-10);
                          }
                          const double v = est.action_values[a] *
                                           at.pi_opp(i) / at.q;
                          lo = std::min(lo, v);
                          hi = std::max(hi, v);
                        });
        }
        CHECK(hi - lo <= 1e-10);
      }
    });
    std::vector<double> out(1);
    CHECK_THROWS_AS(oracle.values(TrajectoryNode{}, opponent_of(i), out),
                    ContractError);
  }
}

TEST_CASE("solver runs are reproducible") {
  const auto leduc = make_game("leduc");
  McOptions o = McOptions::vr_mccfr_plus();
  o.seed = 5;
  McSolver a(leduc, o), b(leduc, o);
  o.seed = 6;
  McSolver c(leduc, o);
  a.run(500);
  b.run(500);
  c.run(500);
  CHECK(a.stores().regrets == b.stores().regrets);
  CHECK(a.stores().average == b.stores().average);
  CHECK(a.stores().baselines == b.stores().baselines);
  CHECK_FALSE(a.stores().regrets == c.stores().regrets);
}

TEST_CASE("solver option checks") {
  McOptions o = McOptions::vr_mccfr();
  o.alpha = 0.0;
  CHECK_THROWS_AS(McSolver(make_game("kuhn"), o), std::invalid_argument);
  o = McOptions::mccfr();
  o.baseline = {BaselineKind::kOracle, true};
  o.oracle_history_limit = 10;
  CHECK_THROWS_AS(McSolver(make_game("kuhn"), o), std::invalid_argument);
  o.oracle_history_limit = 200000;
  McSolver oracle(make_game("kuhn"), o);
  CHECK_THROWS_AS(oracle.active_baseline(Player::kP1), ContractError);
  oracle.run(10);
}

TEST_CASE("all variants converge on kuhn") {
  const auto kuhn = make_game("kuhn");
  for (McOptions o : {McOptions::mccfr(), McOptions::mccfr_plus(),
                      McOptions::vr_mccfr(), McOptions::vr_mccfr_plus()}) {
    McSolver solver(kuhn, o);
    solver.run(20000);
    CHECK(exploitability(*kuhn, solver.average_strategy()).exploitability <
          0.05);
  }
  McOptions state = McOptions::vr_mccfr_plus();
  state.baseline.kind = BaselineKind::kLearnedState;
  McSolver solver(kuhn, state);
  solver.run(20000);
  CHECK(exploitability(*kuhn, solver.average_strategy()).exploitability < 0.05);
  CHECK(solver.stores().baselines.size(Player::kP1) > 0);
}

}  // namespace
}  // namespace vrmccfr
