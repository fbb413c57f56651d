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

#ifndef VRMCCFR_GAME_HPP_
#define VRMCCFR_GAME_HPP_

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace vrmccfr {

// Raised when a caller breaks an operation's precondition (acting at a
// terminal history, an illegal action, a chance query at a decision node...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Player : std::uint8_t { kP1 = 0, kP2 = 1, kChance = 2 };

inline constexpr std::array<Player, 2> kDecisionPlayers = {Player::kP1,
                                                          Player::kP2};

constexpr int index_of(Player p) { return static_cast<int>(p); }
constexpr Player opponent_of(Player p) {
  return p == Player::kP1 ? Player::kP2 : Player::kP1;
}
std::string_view to_string(Player p);

struct Action {
  int id = 0;              // dense 0..|A(h)|-1 within a node
  std::string_view label;  // points at storage owned by the game
};

// A root-to-node action sequence, chance outcomes included. Fixed capacity so
// copies stay allocation free; both supported games are far shallower.
class History {
 public:
  static constexpr std::size_t kMaxLength = 24;

  History() = default;

  std::span<const std::uint8_t> actions() const {
    return {actions_.data(), size_};
  }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](std::size_t i) const { return actions_[i]; }

  // Unchecked extension; Game::apply_action validates legality.
  History child(int action) const;
  History prefix(std::size_t length) const;
  bool is_prefix_of(const History& other) const;

  friend bool operator==(const History& a, const History& b) {
    return a.size_ == b.size_ &&
           std::equal(a.actions_.begin(), a.actions_.begin() + a.size_,
                      b.actions_.begin());
  }

 private:
  std::array<std::uint8_t, kMaxLength> actions_{};
  std::uint8_t size_ = 0;
};

struct HistoryHash {
  std::size_t operator()(const History& h) const noexcept;
};

// Player-relative observation string. For the acting player this is the
// information set I(h); for anyone else it is the augmented set I_i(h).
struct InfoStateKey {
  Player player = Player::kP1;
  std::string observation;

  friend bool operator==(const InfoStateKey&, const InfoStateKey&) = default;
};

struct InfoStateKeyHash {
  std::size_t operator()(const InfoStateKey& k) const noexcept {
    return std::hash<std::string_view>{}(k.observation) * 31u +
           static_cast<std::size_t>(k.player);
  }
};

// Two-player zero-sum extensive-form game with chance. Implementations are
// immutable after construction and safe to share between threads.
class Game {
 public:
  virtual ~Game() = default;

  virtual std::string_view name() const = 0;

  virtual bool is_terminal(const History& h) const = 0;
  virtual Player current_player(const History& h) const = 0;
  virtual int num_actions(const History& h) const = 0;
  virtual std::vector<Action> legal_actions(const History& h) const = 0;
  virtual double utility(const History& h, Player p) const = 0;
  // Probabilities aligned with legal action ids at a chance node.
  virtual std::vector<double> chance_probabilities(const History& h) const = 0;
  virtual InfoStateKey info_state_key(const History& h, Player p) const = 0;

  // Game-wide action identity used to index per-key baseline slots. Chance
  // outcomes inside one augmented information set can have different dense
  // ids (e.g. which cards remain), so baselines key on this code instead.
  virtual int action_code(const History& h, int action) const = 0;
  virtual int num_action_codes() const = 0;
  virtual std::vector<int> action_codes(const History& h) const;

  virtual double min_utility() const = 0;
  virtual double max_utility() const = 0;

  std::vector<std::pair<Action, double>> chance_outcomes(
      const History& h) const;
  History apply_action(const History& h, int action) const;
  History apply_action(const History& h, std::string_view label) const;
  // Count of all histories (terminal and not) reachable from the root.
  std::size_t num_histories() const;
};

// Enumerates every terminal history in depth-first, action-id order.
void for_each_terminal(const Game& game,
                       const std::function<void(const History&)>& visit);
void for_each_history(const Game& game,
                      const std::function<void(const History&)>& visit);

}  // namespace vrmccfr

#endif  // VRMCCFR_GAME_HPP_
