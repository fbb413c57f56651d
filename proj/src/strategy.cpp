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

#include "vrmccfr/strategy.hpp"

#include <algorithm>

namespace vrmccfr {

void UniformStrategy::probabilities(const InfoStateKey&,
                                    std::span<double> out) const {
  std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
}

void TabularStrategy::probabilities(const InfoStateKey& key,
                                    std::span<double> out) const {
  auto it = table_.find(key);
  if (it == table_.end() || it->second.size() != out.size()) {
    std::fill(out.begin(), out.end(), 1.0 / static_cast<double>(out.size()));
    return;
  }
  std::copy(it->second.begin(), it->second.end(), out.begin());
}

TabularStrategy snapshot(const Game& game, const Strategy& source) {
  TabularStrategy out;
  for_each_history(game, [&](const History& h) {
    if (game.is_terminal(h)) return;
    const Player p = game.current_player(h);
    if (p == Player::kChance) return;
    InfoStateKey key = game.info_state_key(h, p);
    if (out.table().contains(key)) return;
    std::vector<double> probs =
        source.probabilities(key, static_cast<std::size_t>(game.num_actions(h)));
    out.set(key, std::move(probs));
  });
  return out;
}

}  // namespace vrmccfr
