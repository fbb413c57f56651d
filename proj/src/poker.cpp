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

#include "vrmccfr/poker.hpp"

#include <stdexcept>
#include <utility>

namespace vrmccfr {

LimitPokerGame::LimitPokerGame(LimitPokerRules rules)
    : rules_(std::move(rules)) {
  const int deck = static_cast<int>(rules_.card_labels.size());
  if (rules_.bet_sizes.empty() || rules_.bet_sizes.size() > 2) {
    throw std::invalid_argument("LimitPokerRules: one or two rounds supported");
  }
  if (rules_.num_suits < 1 || deck % rules_.num_suits != 0) {
    throw std::invalid_argument("LimitPokerRules: deck not divisible by suits");
  }
  const int cards_needed = 2 + (num_rounds() == 2 ? 1 : 0);
  if (deck < cards_needed || deck > 8) {
    throw std::invalid_argument("LimitPokerRules: unsupported deck size");
  }
  if (rules_.max_raises < 0 || rules_.ante < 0) {
    throw std::invalid_argument("LimitPokerRules: negative ante or raise cap");
  }
  max_utility_ = rules_.ante;
  for (int size : rules_.bet_sizes) max_utility_ += rules_.max_raises * size;
}

void LimitPokerGame::fill_legal(State& s) const {
  const int deck = static_cast<int>(rules_.card_labels.size());
  s.num_legal = 0;
  auto push = [&s](int code) { s.legal[s.num_legal++] = code; };
  switch (s.phase) {
    case Phase::kDealP1:
    case Phase::kDealP2:
    case Phase::kDealPublic:
      for (int c = 0; c < deck; ++c) {
        if (c == s.cards[0] || c == s.cards[1]) continue;
        push(kFirstCardCode + c);
      }
      break;
    case Phase::kBet: {
      const int me = s.to_act;
      const bool facing = s.contrib[1 - me] > s.contrib[me];
      if (facing) push(kFold);
      push(kCall);
      if (s.raises < rules_.max_raises) push(kRaise);
      break;
    }
    case Phase::kTerminal:
      break;
  }
}

void LimitPokerGame::apply(State& s, int action) const {
  const int code = s.legal[action];
  switch (s.phase) {
    case Phase::kDealP1:
      s.cards[0] = code - kFirstCardCode;
      s.phase = Phase::kDealP2;
      break;
    case Phase::kDealP2:
      s.cards[1] = code - kFirstCardCode;
      s.phase = Phase::kBet;
      break;
    case Phase::kDealPublic:
      s.public_card = code - kFirstCardCode;
      s.phase = Phase::kBet;
      s.round = 1;
      s.to_act = 0;
      s.raises = 0;
      s.actions_in_round = 0;
      break;
    case Phase::kBet: {
      const int me = s.to_act;
      const int other = 1 - me;
      ++s.actions_in_round;
      if (code == kFold) {
        s.folder = me;
        s.phase = Phase::kTerminal;
      } else if (code == kCall) {
        const bool facing = s.contrib[other] > s.contrib[me];
        s.contrib[me] = s.contrib[other];
        if (facing || s.actions_in_round >= 2) {
          s.phase = s.round + 1 < num_rounds() ? Phase::kDealPublic
                                               : Phase::kTerminal;
        } else {
          s.to_act = other;
        }
      } else {
        s.contrib[me] = s.contrib[other] + rules_.bet_sizes[s.round];
        ++s.raises;
        s.to_act = other;
      }
      break;
    }
    case Phase::kTerminal:
      break;
  }
  fill_legal(s);
}

LimitPokerGame::State LimitPokerGame::replay(const History& h) const {
  State s;
  s.contrib[0] = s.contrib[1] = rules_.ante;
  fill_legal(s);
  for (std::uint8_t a : h.actions()) {
    if (s.phase == Phase::kTerminal || a >= s.num_legal) {
      throw ContractError("LimitPokerGame: history is not reachable");
    }
    apply(s, a);
  }
  return s;
}

bool LimitPokerGame::is_terminal(const History& h) const {
  return replay(h).phase == Phase::kTerminal;
}

Player LimitPokerGame::current_player(const History& h) const {
  const State s = replay(h);
  switch (s.phase) {
    case Phase::kTerminal:
      throw ContractError("current_player: history is terminal");
    case Phase::kBet:
      return s.to_act == 0 ? Player::kP1 : Player::kP2;
    default:
      return Player::kChance;
  }
}

int LimitPokerGame::num_actions(const History& h) const {
  const State s = replay(h);
  if (s.phase == Phase::kTerminal) {
    throw ContractError("num_actions: history is terminal");
  }
  return s.num_legal;
}

std::string_view LimitPokerGame::code_label(int code) const {
  switch (code) {
    case kFold:
      return rules_.fold_label;
    case kCall:
      return rules_.call_label;
    case kRaise:
      return rules_.raise_label;
    default:
      return rules_.card_labels[code - kFirstCardCode];
  }
}

std::vector<Action> LimitPokerGame::legal_actions(const History& h) const {
  const State s = replay(h);
  if (s.phase == Phase::kTerminal) {
    throw ContractError("legal_actions: history is terminal");
  }
  std::vector<Action> out;
  out.reserve(s.num_legal);
  for (int a = 0; a < s.num_legal; ++a) {
    out.push_back({a, code_label(s.legal[a])});
  }
  return out;
}

double LimitPokerGame::utility(const History& h, Player p) const {
  if (p == Player::kChance) {
    throw ContractError("utility: chance has no payoff");
  }
  const State s = replay(h);
  if (s.phase != Phase::kTerminal) {
    throw ContractError("utility: history is not terminal");
  }
  const int me = index_of(p);
  if (s.folder >= 0) {
    const int pot_share = s.contrib[s.folder];
    return s.folder == me ? -pot_share : pot_share;
  }
  auto strength = [&](int player) {
    const int r = rank(s.cards[player]);
    const bool pair = s.public_card >= 0 && r == rank(s.public_card);
    return (pair ? 100 : 0) + r;
  };
  const int mine = strength(me);
  const int theirs = strength(1 - me);
  if (mine == theirs) return 0.0;
  return mine > theirs ? s.contrib[1 - me] : -s.contrib[me];
}

std::vector<double> LimitPokerGame::chance_probabilities(
    const History& h) const {
  const State s = replay(h);
  if (s.phase != Phase::kDealP1 && s.phase != Phase::kDealP2 &&
      s.phase != Phase::kDealPublic) {
    throw ContractError("chance_probabilities: not a chance node");
  }
  return std::vector<double>(s.num_legal, 1.0 / s.num_legal);
}

InfoStateKey LimitPokerGame::info_state_key(const History& h, Player p) const {
  if (p == Player::kChance) {
    throw ContractError("info_state_key: chance has no information state");
  }
  InfoStateKey key{p, {}};
  key.observation.reserve(2 * h.size() + 2);
  State s;
  s.contrib[0] = s.contrib[1] = rules_.ante;
  fill_legal(s);
  for (std::uint8_t a : h.actions()) {
    if (s.phase == Phase::kTerminal || a >= s.num_legal) {
      throw ContractError("LimitPokerGame: history is not reachable");
    }
    const bool hidden = (s.phase == Phase::kDealP1 && p != Player::kP1) ||
                        (s.phase == Phase::kDealP2 && p != Player::kP2);
    if (hidden) {
      key.observation += '?';
    } else {
      key.observation += code_label(s.legal[a]);
    }
    apply(s, a);
  }
  return key;
}

int LimitPokerGame::action_code(const History& h, int action) const {
  const State s = replay(h);
  if (action < 0 || action >= s.num_legal) {
    throw ContractError("action_code: illegal action");
  }
  return s.legal[action];
}

std::vector<int> LimitPokerGame::action_codes(const History& h) const {
  const State s = replay(h);
  if (s.phase == Phase::kTerminal) {
    throw ContractError("action_codes: history is terminal");
  }
  return std::vector<int>(s.legal, s.legal + s.num_legal);
}

int LimitPokerGame::num_action_codes() const {
  return kFirstCardCode + static_cast<int>(rules_.card_labels.size());
}

std::shared_ptr<const LimitPokerGame> build_kuhn() {
  LimitPokerRules rules;
  rules.name = "kuhn";
  rules.card_labels = {"J", "Q", "K"};
  rules.num_suits = 1;
  rules.bet_sizes = {1};
  rules.max_raises = 1;
  rules.ante = 1;
  rules.raise_label = "B";
  return std::make_shared<const LimitPokerGame>(std::move(rules));
}

std::shared_ptr<const LimitPokerGame> build_leduc() {
  LimitPokerRules rules;
  rules.name = "leduc";
  rules.card_labels = {"Ja", "Jb", "Qa", "Qb", "Ka", "Kb"};
  rules.num_suits = 2;
  rules.bet_sizes = {2, 4};
  rules.max_raises = 2;
  rules.ante = 1;
  rules.raise_label = "R";
  return std::make_shared<const LimitPokerGame>(std::move(rules));
}

std::shared_ptr<const Game> make_game(std::string_view name) {
  if (name == "kuhn") return build_kuhn();
  if (name == "leduc") return build_leduc();
  throw std::invalid_argument("unknown game '" + std::string(name) +
                              "' (expected kuhn or leduc)");
}

}  // namespace vrmccfr
