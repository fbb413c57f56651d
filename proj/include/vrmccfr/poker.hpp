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

#ifndef VRMCCFR_POKER_HPP_
#define VRMCCFR_POKER_HPP_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "vrmccfr/game.hpp"

namespace vrmccfr {

// Fixed-limit heads-up poker with one private card each and, when there are
// two rounds, one public card dealt between them. Kuhn and Leduc are both
// instances.
//
// Conventions:
//  - Deal order: P1's card, P2's card, [betting], [public card, betting].
//  - P1 acts first in every round.
//  - Action ids at a betting node are ordered Fold < Call/Check < Bet/Raise.
//    Fold is only legal when facing a bet; Bet/Raise only while the round's
//    raise cap has not been reached.
//  - A round ends on check-check or on a call; a fold ends the game.
//  - Showdown: pairing the public card beats any unpaired hand, otherwise the
//    higher rank wins; equal ranks split the pot.
struct LimitPokerRules {
  std::string name;
  // Deck in canonical order; rank of card c is c / num_suits.
  std::vector<std::string> card_labels;
  int num_suits = 1;
  std::vector<int> bet_sizes;  // one entry per round
  int max_raises = 1;          // bets + raises allowed per round
  int ante = 1;
  std::string fold_label = "F";
  std::string call_label = "C";
  std::string raise_label = "B";
};

class LimitPokerGame final : public Game {
 public:
  explicit LimitPokerGame(LimitPokerRules rules);

  const LimitPokerRules& rules() const { return rules_; }
  int num_rounds() const { return static_cast<int>(rules_.bet_sizes.size()); }

  std::string_view name() const override { return rules_.name; }
  bool is_terminal(const History& h) const override;
  Player current_player(const History& h) const override;
  int num_actions(const History& h) const override;
  std::vector<Action> legal_actions(const History& h) const override;
  double utility(const History& h, Player p) const override;
  std::vector<double> chance_probabilities(const History& h) const override;
  InfoStateKey info_state_key(const History& h, Player p) const override;
  int action_code(const History& h, int action) const override;
  int num_action_codes() const override;
  std::vector<int> action_codes(const History& h) const override;
  double min_utility() const override { return -max_utility_; }
  double max_utility() const override { return max_utility_; }

  // Betting action codes; chance outcomes use kFirstCardCode + card index.
  static constexpr int kFold = 0;
  static constexpr int kCall = 1;
  static constexpr int kRaise = 2;
  static constexpr int kFirstCardCode = 3;

 private:
  enum class Phase { kDealP1, kDealP2, kBet, kDealPublic, kTerminal };

  struct State {
    Phase phase = Phase::kDealP1;
    int cards[2] = {-1, -1};
    int public_card = -1;
    int round = 0;
    int to_act = 0;
    int raises = 0;
    int actions_in_round = 0;
    int contrib[2] = {0, 0};
    int folder = -1;
    // Codes of the legal moves at this node, indexed by dense id.
    int legal[8] = {};
    int num_legal = 0;
  };

  State replay(const History& h) const;
  void fill_legal(State& s) const;
  void apply(State& s, int action) const;
  int rank(int card) const { return card / rules_.num_suits; }
  std::string_view code_label(int code) const;

  LimitPokerRules rules_;
  double max_utility_ = 0;
};

std::shared_ptr<const LimitPokerGame> build_kuhn();
std::shared_ptr<const LimitPokerGame> build_leduc();

// "kuhn" or "leduc"; throws std::invalid_argument otherwise.
std::shared_ptr<const Game> make_game(std::string_view name);

}  // namespace vrmccfr

#endif  // VRMCCFR_POKER_HPP_
