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

#ifndef VRMCCFR_STRATEGY_HPP_
#define VRMCCFR_STRATEGY_HPP_

#include <span>
#include <unordered_map>
#include <vector>

#include "vrmccfr/game.hpp"
#include "vrmccfr/tables.hpp"

namespace vrmccfr {

// A behaviour strategy profile: a distribution over actions for every
// information set of both players. Missing keys fall back to uniform.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual void probabilities(const InfoStateKey& key,
                             std::span<double> out) const = 0;

  std::vector<double> probabilities(const InfoStateKey& key,
                                    std::size_t num_actions) const {
    std::vector<double> out(num_actions);
    probabilities(key, out);
    return out;
  }
};

class UniformStrategy final : public Strategy {
 public:
  void probabilities(const InfoStateKey&, std::span<double> out) const override;
  using Strategy::probabilities;
};

class TabularStrategy final : public Strategy {
 public:
  void set(const InfoStateKey& key, std::vector<double> probs) {
    table_[key] = std::move(probs);
  }
  void probabilities(const InfoStateKey& key,
                     std::span<double> out) const override;
  using Strategy::probabilities;

  const std::unordered_map<InfoStateKey, std::vector<double>,
                           InfoStateKeyHash>&
  table() const {
    return table_;
  }

 private:
  std::unordered_map<InfoStateKey, std::vector<double>, InfoStateKeyHash>
      table_;
};

// Regret-matching view over a regret table; reflects later table updates.
class CurrentStrategy final : public Strategy {
 public:
  explicit CurrentStrategy(const RegretStore& regrets) : regrets_(&regrets) {}
  void probabilities(const InfoStateKey& key,
                     std::span<double> out) const override {
    regrets_->current_strategy(key, out);
  }
  using Strategy::probabilities;

 private:
  const RegretStore* regrets_;
};

class AverageStrategy final : public Strategy {
 public:
  explicit AverageStrategy(const AvgStrategyStore& store) : store_(&store) {}
  void probabilities(const InfoStateKey& key,
                     std::span<double> out) const override {
    store_->average_strategy(key, out);
  }
  using Strategy::probabilities;

 private:
  const AvgStrategyStore* store_;
};

// Copies the distribution of `source` at every decision information set of
// `game` into a standalone table.
TabularStrategy snapshot(const Game& game, const Strategy& source);

}  // namespace vrmccfr

#endif  // VRMCCFR_STRATEGY_HPP_
