// Copyright 2026 The cpnets Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CPNETS_GAME_HPP_
#define CPNETS_GAME_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "cpnets/core.hpp"

namespace cpnets {

using PlayerIndex = int;

// One player and one joint strategy have the same shapes as a variable and
// an outcome; the translations below identify them positionally.
using JointStrategy = Outcome;

struct GamePlayer {
  std::string name;
  std::vector<std::string> strategies;

  bool operator==(const GamePlayer&) const = default;
};

// A strategic game with parametrized preferences: every player holds, for
// each joint strategy of the opponents, a strict linear order over their own
// strategies. Orders are stored densely, indexed by the mixed-radix encoding
// of the opponent profile (player order with the owner's coordinate removed),
// mirroring the CP-net table layout.
struct Game {
  std::vector<GamePlayer> players;
  std::vector<std::vector<TotalOrder>> preferences;  // [player][profile key]

  bool operator==(const Game&) const = default;

  int player_count() const { return static_cast<int>(players.size()); }

  int strategy_count(PlayerIndex i) const {
    return static_cast<int>(players[i].strategies.size());
  }

  std::vector<int> strategy_counts() const {
    std::vector<int> counts;
    counts.reserve(players.size());
    for (const auto& p : players) {
      counts.push_back(static_cast<int>(p.strategies.size()));
    }
    return counts;
  }

  std::vector<int> opponent_radices(PlayerIndex i) const {
    std::vector<int> radices;
    radices.reserve(players.size() - 1);
    for (PlayerIndex j = 0; j < player_count(); ++j) {
      if (j != i) radices.push_back(strategy_count(j));
    }
    return radices;
  }

  std::uint64_t opponent_profile_count(PlayerIndex i) const {
    return preferences[i].size();
  }

  PlayerIndex player_index(std::string_view name) const {
    for (std::size_t i = 0; i < players.size(); ++i) {
      if (players[i].name == name) return static_cast<PlayerIndex>(i);
    }
    return -1;
  }

  ValueIndex strategy_index(PlayerIndex i, std::string_view token) const {
    const auto& strategies = players[i].strategies;
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      if (strategies[k] == token) return static_cast<ValueIndex>(k);
    }
    return -1;
  }
};

// s with coordinate i deleted, order preserved.
inline JointStrategy opponents_of(const JointStrategy& s, PlayerIndex i) {
  JointStrategy rest;
  rest.reserve(s.size() - 1);
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (static_cast<PlayerIndex>(j) != i) rest.push_back(s[j]);
  }
  return rest;
}

inline const TotalOrder& preference_at(const Game& game, PlayerIndex i,
                                       const JointStrategy& opponents) {
  const std::uint64_t key =
      encode_mixed_radix(opponents, game.opponent_radices(i));
  return game.preferences[i][key];
}

// Pure Nash equilibrium: every player's held strategy is weakly preferred to
// every alternative under the opponents' profile — with strict orders, it
// tops the applicable order.
inline bool is_nash(const Game& game, const JointStrategy& s) {
  for (PlayerIndex i = 0; i < game.player_count(); ++i) {
    if (preference_at(game, i, opponents_of(s, i)).top() != s[i]) return false;
  }
  return true;
}

inline std::uint64_t joint_strategy_count(
    const Game& game, std::uint64_t cap = kDefaultMaxOutcomes) {
  const auto count = checked_product(game.strategy_counts(), cap);
  if (!count) {
    throw SizeLimitError("joint-strategy space exceeds the configured limit of " +
                         std::to_string(cap) + " profiles");
  }
  return *count;
}

// Exhaustive enumeration, ascending encoding order.
inline std::vector<JointStrategy> nash_equilibria(
    const Game& game, std::uint64_t max_joint_strategies = kDefaultMaxOutcomes) {
  const std::uint64_t count = joint_strategy_count(game, max_joint_strategies);
  const auto radices = game.strategy_counts();
  std::vector<JointStrategy> equilibria;
  for (std::uint64_t code = 0; code < count; ++code) {
    JointStrategy s = decode_mixed_radix(code, radices);
    if (is_nash(game, s)) equilibria.push_back(std::move(s));
  }
  return equilibria;
}

// ---------------------------------------------------------------------------
// CP-net -> game. Each variable becomes a player whose strategies are the
// domain values; the order under an opponent profile is the table row keyed
// by the profile's parent coordinates, so it depends on those alone.
inline Game cpnet_to_game(const CPNet& net) {
  Game game;
  game.players.reserve(net.variables.size());
  for (const auto& var : net.variables) {
    game.players.push_back({var.name, var.domain});
  }
  game.preferences.resize(net.variable_count());
  for (VarIndex i = 0; i < net.variable_count(); ++i) {
    const auto opponent_radices = game.opponent_radices(i);
    const std::uint64_t profiles =
        checked_product(opponent_radices, std::uint64_t{1} << 22)
            .value_or(0);
    if (profiles == 0 && !opponent_radices.empty()) {
      throw SizeLimitError("opponent profile space too large to store densely");
    }
    const std::uint64_t profile_count = opponent_radices.empty() ? 1 : profiles;
    auto& orders = game.preferences[i];
    orders.reserve(profile_count);
    for (std::uint64_t key = 0; key < profile_count; ++key) {
      const auto opponents = decode_mixed_radix(key, opponent_radices);
      // Parent values, read out of the opponent profile: player j sits at
      // position j when j < i and at j - 1 otherwise.
      std::vector<ValueIndex> parent_values;
      parent_values.reserve(net.tables[i].parents.size());
      for (VarIndex p : net.tables[i].parents) {
        parent_values.push_back(opponents[p < i ? p : p - 1]);
      }
      orders.push_back(
          net.tables[i].rows[encode_mixed_radix(parent_values,
                                                net.parent_radices(i))]);
    }
  }
  return game;
}

// ---------------------------------------------------------------------------
// Game -> CP-net. Each player becomes a variable whose parents are all other
// variables; the row for an opponent profile is that profile's order. The
// result is deliberately the unreduced, full-parent net; reducing it is a
// separate, explicit step.
inline CPNet game_to_cpnet(const Game& game,
                           std::uint64_t max_table_rows = kDefaultMaxTableRows) {
  CPNet net;
  for (const auto& player : game.players) {
    net.add_variable(player.name, player.strategies);
  }
  for (PlayerIndex i = 0; i < game.player_count(); ++i) {
    std::vector<VarIndex> parents;
    parents.reserve(game.player_count() - 1);
    for (PlayerIndex j = 0; j < game.player_count(); ++j) {
      if (j != i) parents.push_back(j);
    }
    if (!checked_product(game.opponent_radices(i), max_table_rows)) {
      throw SizeLimitError(
          "translated table for variable '" + game.players[i].name +
          "' exceeds the limit of " + std::to_string(max_table_rows) + " rows");
    }
    net.set_parents(i, parents);
    // The parent list is the player order with i removed, so the row key of
    // a parent assignment equals the opponent-profile key.
    for (std::uint64_t key = 0; key < game.opponent_profile_count(i); ++key) {
      net.set_row_by_key(i, key, game.preferences[i][key]);
    }
  }
  return net;
}

inline bool games_equal(const Game& a, const Game& b) { return a == b; }

}  // namespace cpnets

#endif  // CPNETS_GAME_HPP_
