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

#include "vrmccfr/eval.hpp"

#include <unordered_map>
#include <utility>
#include <vector>

namespace vrmccfr {
namespace {

// Expectimax against a fixed opponent. Information-set members and their
// opponent-and-chance reach are collected first; an information set's action
// is then chosen from the summed values of all its members.
class BestResponder {
 public:
  BestResponder(const Game& game, const Strategy& profile, Player player)
      : game_(game), profile_(profile), player_(player) {
    collect(History{}, 1.0);
  }

  double value(const History& h) {
    if (auto it = values_.find(h); it != values_.end()) return it->second;
    double v = 0.0;
    if (game_.is_terminal(h)) {
      v = game_.utility(h, player_);
    } else {
      const Player actor = game_.current_player(h);
      const int n = game_.num_actions(h);
      if (actor == player_) {
        v = value(h.child(best_action(game_.info_state_key(h, actor))));
      } else {
        const std::vector<double> probs = distribution(h, actor, n);
        for (int a = 0; a < n; ++a) {
          if (probs[a] > 0.0) v += probs[a] * value(h.child(a));
        }
      }
    }
    values_.emplace(h, v);
    return v;
  }

  TabularStrategy policy() {
    TabularStrategy out;
    for (const auto& [key, members] : members_) {
      const int n = game_.num_actions(members.front().first);
      std::vector<double> probs(n, 0.0);
      probs[best_action(key)] = 1.0;
      out.set(key, std::move(probs));
    }
    return out;
  }

 private:
  std::vector<double> distribution(const History& h, Player actor, int n) {
    if (actor == Player::kChance) return game_.chance_probabilities(h);
    return profile_.probabilities(game_.info_state_key(h, actor),
                                  static_cast<std::size_t>(n));
  }

  void collect(const History& h, double pi_opp) {
    if (game_.is_terminal(h)) return;
    const Player actor = game_.current_player(h);
    const int n = game_.num_actions(h);
    if (actor == player_) {
      members_[game_.info_state_key(h, actor)].emplace_back(h, pi_opp);
      for (int a = 0; a < n; ++a) collect(h.child(a), pi_opp);
      return;
    }
    const std::vector<double> probs = distribution(h, actor, n);
    for (int a = 0; a < n; ++a) collect(h.child(a), pi_opp * probs[a]);
  }

  int best_action(const InfoStateKey& key) {
    if (auto it = chosen_.find(key); it != chosen_.end()) return it->second;
    const auto& members = members_.at(key);
    const int n = game_.num_actions(members.front().first);
    int best = 0;
    double best_value = 0.0;
    for (int a = 0; a < n; ++a) {
      double total = 0.0;
      for (const auto& [h, w] : members) {
        if (w > 0.0) total += w * value(h.child(a));
      }
      if (a == 0 || total > best_value) {
        best = a;
        best_value = total;
      }
    }
    chosen_.emplace(key, best);
    return best;
  }

  const Game& game_;
  const Strategy& profile_;
  Player player_;
  std::unordered_map<InfoStateKey, std::vector<std::pair<History, double>>,
                     InfoStateKeyHash>
      members_;
  std::unordered_map<InfoStateKey, int, InfoStateKeyHash> chosen_;
  std::unordered_map<History, double, HistoryHash> values_;
};

struct RunningMoments {
  std::int64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }
  double sample_variance() const {
    return n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
  }
};

}  // namespace

BestResponse best_response(const Game& game, const Strategy& profile,
                           Player player) {
  if (player == Player::kChance) {
    throw ContractError("best_response: chance cannot respond");
  }
  BestResponder responder(game, profile, player);
  BestResponse out;
  out.value = responder.value(History{});
  out.policy = responder.policy();
  return out;
}

ExploitabilityRecord exploitability(const Game& game, const Strategy& profile,
                                    std::int64_t iteration) {
  ExploitabilityRecord rec;
  rec.iteration = iteration;
  rec.br_value_p1 = best_response(game, profile, Player::kP1).value;
  rec.br_value_p2 = best_response(game, profile, Player::kP2).value;
  rec.exploitability = (rec.br_value_p1 + rec.br_value_p2) / 2.0;
  return rec;
}

VarianceRecord variance_probe(const Game& game, const Trajectory& visited,
                              Player i, const Strategy& sigma,
                              const SamplingPolicy& xi,
                              const BaselineProvider& baseline, bool bootstrap,
                              const ProbeOptions& options) {
  if (options.probes < 2) {
    throw ContractError("variance_probe: need at least two probes");
  }
  VarianceRecord rec;
  double total = 0.0;
  for (std::size_t d = 0; d < visited.nodes.size(); ++d) {
    const TrajectoryNode& node = visited.nodes[d];
    if (node.actor != i) continue;
    std::vector<RunningMoments> moments(node.num_actions());
    for (int p = 0; p < options.probes; ++p) {
      const std::uint64_t stream =
          options.identical_streams ? 0 : static_cast<std::uint64_t>(p);
      CounterRng rng(options.seed, static_cast<std::uint64_t>(d), stream,
                     0x70726f6265ull);
      const Trajectory probe = resample_from(game, visited, d, sigma, xi, rng);
      walk_backward(probe, i, baseline, bootstrap, d,
                    [&](std::size_t depth, const TrajectoryNode& at,
                        const NodeEstimate& est) {
                      if (depth != d) return;
                      const std::vector<double> v =
                          counterfactual_estimates(at, est, i);
                      for (std::size_t a = 0; a < v.size(); ++a) {
                        moments[a].add(v[a]);
                      }
                    });
    }
    for (const RunningMoments& m : moments) {
      total += m.sample_variance();
      ++rec.pairs;
    }
  }
  rec.mean_variance = rec.pairs > 0 ? total / static_cast<double>(rec.pairs)
                                    : 0.0;
  return rec;
}

VarianceRecord variance_probe(const McSolver& solver,
                              const Trajectory& visited, Player i,
                              const ProbeOptions& options) {
  const CurrentStrategy sigma = solver.current_strategy();
  VarianceRecord rec = variance_probe(
      solver.game(), visited, i, sigma, solver.sampling(),
      solver.active_baseline(i), solver.options().baseline.bootstrap, options);
  rec.iteration = solver.iterations();
  return rec;
}

}  // namespace vrmccfr
