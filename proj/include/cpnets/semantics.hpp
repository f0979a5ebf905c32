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

#ifndef CPNETS_SEMANTICS_HPP_
#define CPNETS_SEMANTICS_HPP_

#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "cpnets/core.hpp"

namespace cpnets {

// A single-variable value change. Worsening moves the value strictly down
// the order given by the applicable table row, improving strictly up. The
// applicable row is the same at both endpoints, since only one variable
// changes and a variable is never its own parent.
enum class FlipDirection { kWorsening, kImproving };

struct Flip {
  VarIndex variable;
  ValueIndex from_value;
  ValueIndex to_value;
  FlipDirection direction;

  bool operator==(const Flip&) const = default;
};

using FlipList = std::vector<std::pair<Flip, Outcome>>;

namespace detail {

// Neighbors of `o` reachable by one flip in `direction`. Deterministic:
// variables in ascending index, targets by descending preference within the
// applicable row.
inline FlipList flips(const CPNet& net, const Outcome& o,
                      FlipDirection direction) {
  FlipList result;
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    const TotalOrder& order = lookup_order(net, x, o);
    const int from_rank = order.rank_of(o[x]);
    const int size = static_cast<int>(order.ranking.size());
    for (int rank = 0; rank < size; ++rank) {
      const bool eligible = direction == FlipDirection::kWorsening
                                ? rank > from_rank
                                : rank < from_rank;
      if (!eligible) continue;
      Outcome neighbor = o;
      neighbor[x] = order.ranking[rank];
      result.push_back(
          {Flip{x, o[x], order.ranking[rank], direction}, std::move(neighbor)});
    }
  }
  return result;
}

}  // namespace detail

inline FlipList worsening_flips(const CPNet& net, const Outcome& o) {
  return detail::flips(net, o, FlipDirection::kWorsening);
}

inline FlipList improving_flips(const CPNet& net, const Outcome& o) {
  return detail::flips(net, o, FlipDirection::kImproving);
}

// ---------------------------------------------------------------------------
// Betterness: a is better than b iff a chain of worsening flips leads from a
// to b. The chain relation is searched literally; it need not be irreflexive
// (a worsening cycle makes an outcome better than itself).

struct BetternessWitness {
  // o_0, ..., o_k with k >= 1; each consecutive pair is one worsening flip.
  std::vector<Outcome> chain;
};

// Re-validates a witness step by step against the table rows.
inline bool witness_valid(const CPNet& net, const BetternessWitness& witness) {
  if (witness.chain.size() < 2) return false;
  for (std::size_t step = 0; step + 1 < witness.chain.size(); ++step) {
    const Outcome& at = witness.chain[step];
    const Outcome& next = witness.chain[step + 1];
    if (at.size() != next.size()) return false;
    VarIndex changed = -1;
    for (VarIndex x = 0; x < static_cast<VarIndex>(at.size()); ++x) {
      if (at[x] != next[x]) {
        if (changed >= 0) return false;  // more than one variable moved
        changed = x;
      }
    }
    if (changed < 0) return false;  // no flip at all
    const TotalOrder& order = lookup_order(net, changed, at);
    if (!order.prefers(at[changed], next[changed])) return false;
  }
  return true;
}

// Breadth-first search over the worsening-flip digraph, so a found witness
// is a shortest chain. Outcomes are encoded as mixed-radix integers and the
// visited set is a flat bit vector.
inline std::optional<BetternessWitness> better(
    const CPNet& net, const Outcome& from, const Outcome& to,
    std::uint64_t max_outcomes = kDefaultMaxOutcomes) {
  const std::uint64_t count = outcome_count(net, max_outcomes);
  const std::uint64_t start = encode_outcome(net, from);
  const std::uint64_t goal = encode_outcome(net, to);

  std::vector<bool> visited(count, false);
  std::vector<std::int64_t> predecessor(count, -1);
  std::deque<std::uint64_t> queue;
  visited[start] = true;
  queue.push_back(start);

  while (!queue.empty()) {
    const std::uint64_t at = queue.front();
    queue.pop_front();
    for (const auto& [flip, neighbor] : worsening_flips(net, decode_outcome(net, at))) {
      const std::uint64_t code = encode_outcome(net, neighbor);
      if (code == goal) {
        // Walk back from `at` to `start`, then append the goal. When the
        // goal equals the start this still yields a proper cycle.
        std::vector<Outcome> chain;
        for (std::int64_t node = static_cast<std::int64_t>(at); node >= 0;
             node = predecessor[node]) {
          chain.push_back(decode_outcome(net, static_cast<std::uint64_t>(node)));
          if (static_cast<std::uint64_t>(node) == start) break;
        }
        std::reverse(chain.begin(), chain.end());
        chain.push_back(to);
        return BetternessWitness{std::move(chain)};
      }
      if (!visited[code]) {
        visited[code] = true;
        predecessor[code] = static_cast<std::int64_t>(at);
        queue.push_back(code);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Optimality. is_optimal follows the chain definition: it searches backward
// over improving flips for any strictly better outcome. is_locally_optimal
// checks the one-flip condition directly on the table rows. Their agreement
// is a theorem, certified by tests, not an assumption baked in here.

inline bool is_optimal(const CPNet& net, const Outcome& o,
                       std::uint64_t max_outcomes = kDefaultMaxOutcomes) {
  const std::uint64_t count = outcome_count(net, max_outcomes);
  const std::uint64_t start = encode_outcome(net, o);

  std::vector<bool> visited(count, false);
  std::deque<std::uint64_t> queue;
  visited[start] = true;
  queue.push_back(start);
  while (!queue.empty()) {
    const std::uint64_t at = queue.front();
    queue.pop_front();
    for (const auto& [flip, neighbor] : improving_flips(net, decode_outcome(net, at))) {
      // Anything reached by at least one improving flip is strictly better
      // than o (reverse the chain to get a worsening chain into o).
      (void)flip;
      (void)neighbor;
      return false;
    }
  }
  return true;
}

inline bool is_locally_optimal(const CPNet& net, const Outcome& o) {
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    if (lookup_order(net, x, o).top() != o[x]) return false;
  }
  return true;
}

// The brute-force oracle: materializes the full worsening-flip digraph over
// the encoded outcome space and excludes every outcome some other outcome
// dominates (every flip target has a strictly better source). Deterministic:
// results come out in ascending encoding order.
inline std::vector<Outcome> optimal_outcomes(
    const CPNet& net, std::uint64_t max_outcomes = kDefaultMaxOutcomes) {
  const std::uint64_t count = outcome_count(net, max_outcomes);
  std::vector<bool> dominated(count, false);
  for (std::uint64_t code = 0; code < count; ++code) {
    for (const auto& [flip, neighbor] :
         worsening_flips(net, decode_outcome(net, code))) {
      (void)flip;
      dominated[encode_outcome(net, neighbor)] = true;
    }
  }
  std::vector<Outcome> optimal;
  for (std::uint64_t code = 0; code < count; ++code) {
    if (!dominated[code]) optimal.push_back(decode_outcome(net, code));
  }
  return optimal;
}

}  // namespace cpnets

#endif  // CPNETS_SEMANTICS_HPP_
