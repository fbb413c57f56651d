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

#include "vrmccfr/tables.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>

namespace vrmccfr {

void regret_matching(std::span<const double> regrets, std::span<double> out) {
  if (regrets.empty()) {
    throw ContractError("regret_matching: empty regret vector");
  }
  if (out.size() != regrets.size()) {
    throw ContractError("regret_matching: output size mismatch");
  }
  double positive_sum = 0.0;
  for (double r : regrets) positive_sum += std::max(r, 0.0);
  if (positive_sum > 0.0) {
    for (std::size_t a = 0; a < regrets.size(); ++a) {
      out[a] = std::max(regrets[a], 0.0) / positive_sum;
    }
  } else {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
  }
}

std::vector<double> regret_matching(std::span<const double> regrets) {
  std::vector<double> out(regrets.size());
  regret_matching(regrets, out);
  return out;
}

std::vector<double> rm_plus_accumulate(std::span<const double> q,
                                       std::span<const double> r) {
  if (q.size() != r.size()) {
    throw ContractError("rm_plus_accumulate: length mismatch");
  }
  std::vector<double> out(q.size());
  for (std::size_t a = 0; a < q.size(); ++a) out[a] = std::max(q[a] + r[a], 0.0);
  return out;
}

std::span<double> ActionTable::at(const InfoStateKey& key, std::size_t n) {
  auto [it, inserted] = entries_.try_emplace(key);
  if (inserted) {
    it->second.assign(n, 0.0);
  } else if (it->second.size() != n) {
    throw ContractError("ActionTable: action count changed for key '" +
                        key.observation + "'");
  }
  return it->second;
}

std::span<const double> ActionTable::find(const InfoStateKey& key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) return {};
  return it->second;
}

void ActionTable::write_snapshot(std::ostream& os) const {
  std::vector<const Map::value_type*> sorted;
  sorted.reserve(entries_.size());
  for (const auto& e : entries_) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) {
    if (a->first.player != b->first.player) {
      return a->first.player < b->first.player;
    }
    return a->first.observation < b->first.observation;
  });
  for (const auto* e : sorted) {
    for (std::size_t a = 0; a < e->second.size(); ++a) {
      os << to_string(e->first.player) << ' '
         << (e->first.observation.empty() ? "-" : e->first.observation) << ' '
         << a << ' ' << e->second[a] << '\n';
    }
  }
}

void RegretStore::accumulate(const InfoStateKey& key, std::span<const double> r,
                             RegretUpdate mode) {
  std::span<double> stored = at(key, r.size());
  if (mode == RegretUpdate::kPlus) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      stored[a] = std::max(stored[a] + r[a], 0.0);
    }
  } else {
    for (std::size_t a = 0; a < r.size(); ++a) stored[a] += r[a];
  }
}

void RegretStore::current_strategy(const InfoStateKey& key,
                                   std::span<double> out) const {
  std::span<const double> stored = find(key);
  if (stored.empty()) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return;
  }
  regret_matching(stored, out);
}

void AvgStrategyStore::accumulate(const InfoStateKey& key,
                                  std::span<const double> sigma,
                                  double reach_weight,
                                  double iteration_weight) {
  std::span<double> stored = at(key, sigma.size());
  const double w = iteration_weight * reach_weight;
  for (std::size_t a = 0; a < sigma.size(); ++a) stored[a] += w * sigma[a];
}

void AvgStrategyStore::average_strategy(const InfoStateKey& key,
                                        std::span<double> out) const {
  std::span<const double> stored = find(key);
  double total = 0.0;
  for (double w : stored) total += w;
  if (stored.size() != out.size() || !(total > 0.0)) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return;
  }
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = stored[a] / total;
}

BaselineStore::Entry& BaselineStore::entry(Player p, const InfoStateKey& key) {
  if (p == Player::kChance) throw ContractError("BaselineStore: chance player");
  auto [it, inserted] = tables_[index_of(p)].try_emplace(key);
  if (inserted) {
    it->second.values.assign(num_codes_, 0.0);
    it->second.visits.assign(num_codes_, 0);
  }
  return it->second;
}

const BaselineStore::Entry* BaselineStore::find(Player p,
                                                const InfoStateKey& key) const {
  if (p == Player::kChance) throw ContractError("BaselineStore: chance player");
  const Map& table = tables_[index_of(p)];
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

double BaselineStore::value(Player p, const InfoStateKey& key, int code) const {
  const Entry* e = find(p, key);
  return e == nullptr ? 0.0 : e->values.at(code);
}

std::int64_t BaselineStore::visits(Player p, const InfoStateKey& key,
                                   int code) const {
  const Entry* e = find(p, key);
  return e == nullptr ? 0 : e->visits.at(code);
}

double BaselineStore::state_value(Player p, const InfoStateKey& key) const {
  const Entry* e = find(p, key);
  return e == nullptr ? 0.0 : e->state_value;
}

std::int64_t BaselineStore::state_visits(Player p,
                                         const InfoStateKey& key) const {
  const Entry* e = find(p, key);
  return e == nullptr ? 0 : e->state_visits;
}

namespace {

void check_update(double target, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw ContractError("BaselineStore: alpha must lie in (0, 1]");
  }
  if (!std::isfinite(target)) {
    throw std::domain_error("BaselineStore: non-finite baseline target");
  }
}

}  // namespace

void BaselineStore::update(Player p, const InfoStateKey& key, int code,
                           double target, double alpha) {
  check_update(target, alpha);
  if (code < 0 || code >= num_codes_) {
    throw ContractError("BaselineStore: action code out of range");
  }
  Entry& e = entry(p, key);
  e.values[code] = (1.0 - alpha) * e.values[code] + alpha * target;
  ++e.visits[code];
}

void BaselineStore::update_state(Player p, const InfoStateKey& key,
                                 double target, double alpha) {
  check_update(target, alpha);
  Entry& e = entry(p, key);
  e.state_value = (1.0 - alpha) * e.state_value + alpha * target;
  ++e.state_visits;
}

void BaselineStore::set(Player p, const InfoStateKey& key, int code,
                        double value) {
  if (code < 0 || code >= num_codes_) {
    throw ContractError("BaselineStore: action code out of range");
  }
  entry(p, key).values[code] = value;
}

double baseline_sampled(double baseline, bool on_trajectory, double xi_prob) {
  if (!on_trajectory) return 0.0;
  if (!(xi_prob > 0.0)) {
    throw ContractError("baseline_sampled: sampling probability must be > 0");
  }
  return baseline / xi_prob;
}

void UniformSampling::probabilities(const Game& game, const History& h,
                                    std::span<double> out) const {
  if (game.current_player(h) == Player::kChance) {
    const std::vector<double> probs = game.chance_probabilities(h);
    std::copy(probs.begin(), probs.end(), out.begin());
    return;
  }
  std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
}

}  // namespace vrmccfr
