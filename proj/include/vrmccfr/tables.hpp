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

#ifndef VRMCCFR_TABLES_HPP_
#define VRMCCFR_TABLES_HPP_

#include <cstdint>
#include <iosfwd>
#include <span>
#include <unordered_map>
#include <vector>

#include "vrmccfr/game.hpp"

namespace vrmccfr {

// sigma(a) = max(R(a), 0) / sum_b max(R(b), 0), uniform when nothing is
// positive.
std::vector<double> regret_matching(std::span<const double> regrets);
void regret_matching(std::span<const double> regrets, std::span<double> out);

// Elementwise max(Q + r, 0).
std::vector<double> rm_plus_accumulate(std::span<const double> q,
                                       std::span<const double> r);

enum class RegretUpdate { kSum, kPlus };

// Per-information-set vectors, created as zeros on first write. Shared
// implementation for the regret and average-strategy tables.
class ActionTable {
 public:
  using Map = std::unordered_map<InfoStateKey, std::vector<double>,
                                 InfoStateKeyHash>;

  // Creates a zero vector of length n on first access. A later access with a
  // different n is a contract violation.
  std::span<double> at(const InfoStateKey& key, std::size_t n);
  // Empty span when the key was never written.
  std::span<const double> find(const InfoStateKey& key) const;

  std::size_t size() const { return entries_.size(); }
  const Map& entries() const { return entries_; }

  // Debug snapshot: one "player observation action value" line per entry,
  // sorted by key. Not a stable format.
  void write_snapshot(std::ostream& os) const;

  friend bool operator==(const ActionTable&, const ActionTable&) = default;

 private:
  Map entries_;
};

class RegretStore : public ActionTable {
 public:
  // Sum mode adds r; plus mode stores max(R + r, 0) per entry.
  void accumulate(const InfoStateKey& key, std::span<const double> r,
                  RegretUpdate mode);
  // Regret-matching strategy at key (uniform over n when absent).
  void current_strategy(const InfoStateKey& key, std::span<double> out) const;
};

class AvgStrategyStore : public ActionTable {
 public:
  // store[key][a] += iteration_weight * reach_weight * sigma[a]
  void accumulate(const InfoStateKey& key, std::span<const double> sigma,
                  double reach_weight, double iteration_weight);
  // Normalized accumulated weights, uniform when absent or all zero.
  void average_strategy(const InfoStateKey& key, std::span<double> out) const;
};

// Learned baselines: per player, per augmented information set, an
// exponentially decayed average of observed values for each action code,
// plus a scalar state value used by the state-only ablation. Entries read as
// zero until visited.
class BaselineStore {
 public:
  explicit BaselineStore(int num_action_codes = 0)
      : num_codes_(num_action_codes) {}

  int num_action_codes() const { return num_codes_; }

  double value(Player p, const InfoStateKey& key, int code) const;
  std::int64_t visits(Player p, const InfoStateKey& key, int code) const;
  double state_value(Player p, const InfoStateKey& key) const;
  std::int64_t state_visits(Player p, const InfoStateKey& key) const;

  // v <- (1 - alpha) v + alpha * target, starting from v = 0 at k = 0.
  // Throws std::domain_error on a non-finite target, ContractError on
  // alpha outside (0, 1].
  void update(Player p, const InfoStateKey& key, int code, double target,
              double alpha);
  void update_state(Player p, const InfoStateKey& key, double target,
                    double alpha);

  // Overwrites an entry without touching its visit count (tests, fixtures).
  void set(Player p, const InfoStateKey& key, int code, double value);

  std::size_t size(Player p) const { return tables_[index_of(p)].size(); }

  friend bool operator==(const BaselineStore&, const BaselineStore&) = default;

 private:
  struct Entry {
    std::vector<double> values;
    std::vector<std::int64_t> visits;
    double state_value = 0.0;
    std::int64_t state_visits = 0;
    friend bool operator==(const Entry&, const Entry&) = default;
  };
  using Map = std::unordered_map<InfoStateKey, Entry, InfoStateKeyHash>;

  Entry& entry(Player p, const InfoStateKey& key);
  const Entry* find(Player p, const InfoStateKey& key) const;

  int num_codes_;
  std::array<Map, 2> tables_;
};

// b / xi for the sampled action, 0 for the others.
double baseline_sampled(double baseline, bool on_trajectory, double xi_prob);

// Sampling policy xi used by outcome sampling. Strictly positive on legal
// actions; equals the chance distribution at chance nodes.
class SamplingPolicy {
 public:
  virtual ~SamplingPolicy() = default;
  virtual void probabilities(const Game& game, const History& h,
                             std::span<double> out) const = 0;
};

class UniformSampling final : public SamplingPolicy {
 public:
  void probabilities(const Game& game, const History& h,
                     std::span<double> out) const override;
};

}  // namespace vrmccfr

#endif  // VRMCCFR_TABLES_HPP_
