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

#ifndef CPNETS_TESTS_TEST_UTIL_HPP_
#define CPNETS_TESTS_TEST_UTIL_HPP_

#include <set>
#include <string>
#include <vector>

#include "cpnets/core.hpp"
#include "cpnets/game.hpp"
#include "cpnets/semantics.hpp"

namespace testutil {

// The worked nets used throughout the suite, built programmatically so the
// parser is not in the loop.

// Four binary variables on a dependency cycle D -> A -> B -> C -> D. A's two
// rows coincide (a is unconditionally preferred), the other tables flip with
// their parent. Unique optimal outcome: abcd.
inline cpnets::CPNet cyclic4_net() {
  cpnets::CPNet net;
  const int a = net.add_variable("A", {"a", "abar"});
  const int b = net.add_variable("B", {"b", "bbar"});
  const int c = net.add_variable("C", {"c", "cbar"});
  const int d = net.add_variable("D", {"d", "dbar"});
  net.set_parents(a, {d});
  net.set_row(a, {0}, {{0, 1}});
  net.set_row(a, {1}, {{0, 1}});
  net.set_parents(b, {a});
  net.set_row(b, {0}, {{0, 1}});
  net.set_row(b, {1}, {{1, 0}});
  net.set_parents(c, {b});
  net.set_row(c, {0}, {{0, 1}});
  net.set_row(c, {1}, {{1, 0}});
  net.set_parents(d, {c});
  net.set_row(d, {0}, {{0, 1}});
  net.set_row(d, {1}, {{1, 0}});
  return net;
}

// A, B independent; C prefers to match them (equal values -> c); D follows C.
inline cpnets::CPNet acyclic4_net() {
  cpnets::CPNet net;
  const int a = net.add_variable("A", {"a", "abar"});
  const int b = net.add_variable("B", {"b", "bbar"});
  const int c = net.add_variable("C", {"c", "cbar"});
  const int d = net.add_variable("D", {"d", "dbar"});
  net.set_row(a, {}, {{0, 1}});
  net.set_row(b, {}, {{0, 1}});
  net.set_parents(c, {a, b});
  net.set_row(c, {0, 0}, {{0, 1}});
  net.set_row(c, {0, 1}, {{1, 0}});
  net.set_row(c, {1, 0}, {{1, 0}});
  net.set_row(c, {1, 1}, {{0, 1}});
  net.set_parents(d, {c});
  net.set_row(d, {0}, {{0, 1}});
  net.set_row(d, {1}, {{1, 0}});
  return net;
}

// Two mutually dependent binary variables whose flip graph is one long cycle
// ab > abbar > abarbbar > abarb > ab; no optimal outcome exists.
inline cpnets::CPNet two_cycle_net() {
  cpnets::CPNet net;
  const int a = net.add_variable("A", {"a", "abar"});
  const int b = net.add_variable("B", {"b", "bbar"});
  net.set_parents(a, {b});
  net.set_row(a, {0}, {{1, 0}});  // B=b: abar > a
  net.set_row(a, {1}, {{0, 1}});  // B=bbar: a > abar
  net.set_parents(b, {a});
  net.set_row(b, {0}, {{0, 1}});  // A=a: b > bbar
  net.set_row(b, {1}, {{1, 0}});  // A=abar: bbar > b
  return net;
}

// Z nominally depends on X and Y but all four rows coincide, so both parents
// are redundant.
inline cpnets::CPNet shared_row_net() {
  cpnets::CPNet net;
  net.add_variable("X", {"a1", "a2"});
  net.add_variable("Y", {"b1", "b2"});
  const int z = net.add_variable("Z", {"c1", "c2"});
  net.set_row(0, {}, {{0, 1}});
  net.set_row(1, {}, {{0, 1}});
  net.set_parents(z, {0, 1});
  for (int key = 0; key < 4; ++key) net.set_row_by_key(z, key, {{0, 1}});
  return net;
}

// Prisoner's dilemma as parametrized preferences: defecting tops both
// players' orders whatever the opponent does.
inline cpnets::Game prisoners_dilemma() {
  cpnets::Game game;
  game.players = {{"P1", {"C1", "N1"}}, {"P2", {"C2", "N2"}}};
  game.preferences = {
      {cpnets::TotalOrder{{1, 0}}, cpnets::TotalOrder{{1, 0}}},
      {cpnets::TotalOrder{{1, 0}}, cpnets::TotalOrder{{1, 0}}},
  };
  return game;
}

inline cpnets::Outcome outcome_of(const cpnets::CPNet& net,
                                  const std::vector<std::string>& tokens) {
  cpnets::Outcome outcome;
  for (int x = 0; x < net.variable_count(); ++x) {
    outcome.push_back(net.value_index(x, tokens[x]));
  }
  return outcome;
}

inline std::vector<std::string> tokens_of(const cpnets::CPNet& net,
                                          const cpnets::Outcome& outcome) {
  std::vector<std::string> tokens;
  for (int x = 0; x < net.variable_count(); ++x) {
    tokens.push_back(net.variables[x].domain[outcome[x]]);
  }
  return tokens;
}

// Optimal outcomes as token tuples: the value identities that survive
// domain-shrinking transformations.
inline std::set<std::vector<std::string>> optimal_token_set(
    const cpnets::CPNet& net) {
  std::set<std::vector<std::string>> set;
  for (const cpnets::Outcome& o : cpnets::optimal_outcomes(net)) {
    set.insert(tokens_of(net, o));
  }
  return set;
}

// Independent cycle check over the dependency graph, used to cross-check the
// Kahn-style topological order.
inline bool dfs_has_cycle(const cpnets::CPNet& net) {
  const cpnets::Digraph graph = cpnets::dependency_graph(net);
  enum Color { kWhite, kGray, kBlack };
  std::vector<Color> color(net.variable_count(), kWhite);
  struct Walker {
    const cpnets::Digraph& graph;
    std::vector<Color>& color;
    bool walk(int node) {
      color[node] = kGray;
      for (int next : graph.successors[node]) {
        if (color[next] == kGray) return true;
        if (color[next] == kWhite && walk(next)) return true;
      }
      color[node] = kBlack;
      return false;
    }
  } walker{graph, color};
  for (int x = 0; x < net.variable_count(); ++x) {
    if (color[x] == kWhite && walker.walk(x)) return true;
  }
  return false;
}

}  // namespace testutil

#endif  // CPNETS_TESTS_TEST_UTIL_HPP_
