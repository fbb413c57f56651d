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

#include "vrmccfr/game.hpp"

#include <string>

namespace vrmccfr {

std::string_view to_string(Player p) {
  switch (p) {
    case Player::kP1:
      return "P1";
    case Player::kP2:
      return "P2";
    case Player::kChance:
      return "Chance";
  }
  return "?";
}

History History::child(int action) const {
  if (size_ >= kMaxLength) throw ContractError("History: capacity exceeded");
  History h = *this;
  h.actions_[h.size_++] = static_cast<std::uint8_t>(action);
  return h;
}

History History::prefix(std::size_t length) const {
  if (length > size_) throw ContractError("History: prefix longer than history");
  History h;
  std::copy_n(actions_.begin(), length, h.actions_.begin());
  h.size_ = static_cast<std::uint8_t>(length);
  return h;
}

bool History::is_prefix_of(const History& other) const {
  return size_ <= other.size_ &&
         std::equal(actions_.begin(), actions_.begin() + size_,
                    other.actions_.begin());
}

std::size_t HistoryHash::operator()(const History& h) const noexcept {
  // FNV-1a over the action bytes, seeded with the length.
  std::size_t x = 1469598103934665603ull ^ h.size();
  for (std::uint8_t a : h.actions()) {
    x ^= a;
    x *= 1099511628211ull;
  }
  return x;
}

std::vector<std::pair<Action, double>> Game::chance_outcomes(
    const History& h) const {
  const std::vector<Action> actions = legal_actions(h);
  const std::vector<double> probs = chance_probabilities(h);
  std::vector<std::pair<Action, double>> out;
  out.reserve(actions.size());
  for (std::size_t a = 0; a < actions.size(); ++a) {
    out.emplace_back(actions[a], probs[a]);
  }
  return out;
}

std::vector<int> Game::action_codes(const History& h) const {
  const int n = num_actions(h);
  std::vector<int> codes(n);
  for (int a = 0; a < n; ++a) codes[a] = action_code(h, a);
  return codes;
}

History Game::apply_action(const History& h, int action) const {
  if (is_terminal(h)) {
    throw ContractError("apply_action: history is terminal");
  }
  if (action < 0 || action >= num_actions(h)) {
    throw ContractError("apply_action: illegal action id " +
                        std::to_string(action));
  }
  return h.child(action);
}

History Game::apply_action(const History& h, std::string_view label) const {
  for (const Action& a : legal_actions(h)) {
    if (a.label == label) return h.child(a.id);
  }
  throw ContractError("apply_action: no legal action labelled '" +
                      std::string(label) + "'");
}

namespace {

void walk(const Game& game, const History& h,
          const std::function<void(const History&)>& visit,
          bool terminals_only) {
  const bool terminal = game.is_terminal(h);
  if (!terminals_only || terminal) visit(h);
  if (terminal) return;
  const int n = game.num_actions(h);
  for (int a = 0; a < n; ++a) walk(game, h.child(a), visit, terminals_only);
}

}  // namespace

void for_each_terminal(const Game& game,
                       const std::function<void(const History&)>& visit) {
  walk(game, History{}, visit, true);
}

void for_each_history(const Game& game,
                      const std::function<void(const History&)>& visit) {
  walk(game, History{}, visit, false);
}

std::size_t Game::num_histories() const {
  std::size_t count = 0;
  for_each_history(*this, [&](const History&) { ++count; });
  return count;
}

}  // namespace vrmccfr
