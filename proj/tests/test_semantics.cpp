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

#include <doctest.h>

#include <algorithm>

#include "cpnets/io.hpp"
#include "cpnets/semantics.hpp"
#include "test_util.hpp"

using namespace cpnets;
using namespace testutil;

namespace {

bool flip_listed(const FlipList& list, const Flip& flip, const Outcome& to) {
  return std::any_of(list.begin(), list.end(), [&](const auto& entry) {
    return entry.first == flip && entry.second == to;
  });
}

std::vector<CPNet> small_random_nets(int count, int variables, int domain_size,
                                     std::uint64_t seed_base = 0) {
  std::vector<CPNet> nets;
  for (int i = 0; i < count; ++i) {
    NetGenOptions options;
    options.variables = variables;
    options.domain_size = domain_size;
    nets.push_back(random_cpnet(options, seed_base + i));
  }
  return nets;
}

}  // namespace

TEST_CASE("worsening flips move a single value strictly down its row") {
  const CPNet net = acyclic4_net();
  const Outcome abcd = {0, 0, 0, 0};
  const auto flips = worsening_flips(net, abcd);
  // Every variable holds its top value, so each has exactly one way down.
  CHECK(flips.size() == 4);
  CHECK(flip_listed(flips, {2, 0, 1, FlipDirection::kWorsening}, {0, 0, 1, 0}));

  // Deterministic order: ascending variable index.
  for (std::size_t i = 0; i + 1 < flips.size(); ++i) {
    CHECK(flips[i].first.variable <= flips[i + 1].first.variable);
  }
}

TEST_CASE("a single-value domain admits no flips") {
  CPNet net;
  net.add_variable("X", {"only"});
  net.set_row(0, {}, {{0}});
  CHECK(worsening_flips(net, {0}).empty());
  CHECK(improving_flips(net, {0}).empty());
}

TEST_CASE("two-variable cycle: flips of ab match the hand-expanded tables") {
  const CPNet net = two_cycle_net();
  const Outcome ab = {0, 0};
  const auto down = worsening_flips(net, ab);
  REQUIRE(down.size() == 1);
  CHECK(down[0].first == Flip{1, 0, 1, FlipDirection::kWorsening});
  CHECK(down[0].second == Outcome{0, 1});

  const auto up = improving_flips(net, ab);
  REQUIRE(up.size() == 1);
  CHECK(up[0].first == Flip{0, 0, 1, FlipDirection::kImproving});
  CHECK(up[0].second == Outcome{1, 0});
}

TEST_CASE("improving flips mirror worsening flips exactly") {
  const CPNet dag = acyclic4_net();
  const auto up = improving_flips(dag, {0, 0, 1, 0});  // ab cbar d
  CHECK(flip_listed(up, {2, 1, 0, FlipDirection::kImproving}, {0, 0, 0, 0}));

  CPNet tiny;
  tiny.add_variable("X", {"x", "y"});
  tiny.set_row(0, {}, {{0, 1}});
  const auto single = improving_flips(tiny, {1});
  REQUIRE(single.size() == 1);
  CHECK(single[0].second == Outcome{0});

  // Mirror property, exhaustive over every outcome of small random nets.
  for (const CPNet& net : small_random_nets(30, 3, 2)) {
    const std::uint64_t count = outcome_count(net);
    for (std::uint64_t code = 0; code < count; ++code) {
      const Outcome o = decode_outcome(net, code);
      for (const auto& [flip, neighbor] : worsening_flips(net, o)) {
        const Flip mirrored{flip.variable, flip.to_value, flip.from_value,
                            FlipDirection::kImproving};
        CHECK(flip_listed(improving_flips(net, neighbor), mirrored, o));
      }
      for (const auto& [flip, neighbor] : improving_flips(net, o)) {
        const Flip mirrored{flip.variable, flip.to_value, flip.from_value,
                            FlipDirection::kWorsening};
        CHECK(flip_listed(worsening_flips(net, neighbor), mirrored, o));
      }
    }
  }
}

TEST_CASE("better finds worsening-flip chains") {
  const CPNet dag = acyclic4_net();
  const Outcome abcd = {0, 0, 0, 0};
  const Outcome worse = outcome_of(dag, {"abar", "b", "cbar", "dbar"});

  const auto witness = better(dag, abcd, worse);
  REQUIRE(witness.has_value());
  CHECK(witness->chain.front() == abcd);
  CHECK(witness->chain.back() == worse);
  CHECK(witness_valid(dag, *witness));

  // No worsening cycle through an outcome means no self-betterness.
  CHECK_FALSE(better(dag, abcd, abcd).has_value());

  // abcd is optimal, so nothing is better than it.
  CHECK_FALSE(better(dag, worse, abcd).has_value());
}

TEST_CASE("two-variable cycle: ab is better than itself via the 4-cycle") {
  const CPNet net = two_cycle_net();
  const Outcome ab = {0, 0};
  const auto witness = better(net, ab, ab);
  REQUIRE(witness.has_value());
  const std::vector<Outcome> expected = {
      {0, 0}, {0, 1}, {1, 1}, {1, 0}, {0, 0}};
  CHECK(witness->chain == expected);
  CHECK(witness_valid(net, *witness));
}

TEST_CASE("is_optimal follows the chain definition") {
  CHECK(is_optimal(cyclic4_net(), {0, 0, 0, 0}));
  const CPNet cycle = two_cycle_net();
  for (std::uint64_t code = 0; code < 4; ++code) {
    CHECK_FALSE(is_optimal(cycle, decode_outcome(cycle, code)));
  }
  const CPNet dag = acyclic4_net();
  CHECK_FALSE(is_optimal(dag, outcome_of(dag, {"abar", "b", "cbar", "dbar"})));
}

TEST_CASE("is_locally_optimal checks the one-flip condition") {
  CHECK(is_locally_optimal(cyclic4_net(), {0, 0, 0, 0}));
  CHECK_FALSE(is_locally_optimal(two_cycle_net(), {0, 0}));

  CPNet tiny;
  tiny.add_variable("X", {"x", "y"});
  tiny.set_row(0, {}, {{0, 1}});
  CHECK(is_locally_optimal(tiny, {0}));
  CHECK_FALSE(is_locally_optimal(tiny, {1}));
}

TEST_CASE("the oracle enumerates exactly the optimal outcomes") {
  CHECK(optimal_outcomes(cyclic4_net()) == std::vector<Outcome>{{0, 0, 0, 0}});
  CHECK(optimal_outcomes(two_cycle_net()).empty());
  CHECK(optimal_outcomes(acyclic4_net()) == std::vector<Outcome>{{0, 0, 0, 0}});
}

TEST_CASE("the oracle refuses outcome spaces above its limit") {
  CHECK_THROWS_AS(optimal_outcomes(cyclic4_net(), 4), SizeLimitError);
  CHECK_THROWS_AS(better(cyclic4_net(), {0, 0, 0, 0}, {1, 0, 0, 0}, 4),
                  SizeLimitError);
}

TEST_CASE("chain optimality and one-flip optimality agree everywhere") {
  // The computational content of the net-to-game correspondence; tested, not
  // assumed.
  std::vector<CPNet> nets = {cyclic4_net(), acyclic4_net(), two_cycle_net()};
  for (std::uint64_t seed = 100; seed < 160; ++seed) {
    NetGenOptions options;
    options.variables = 2 + static_cast<int>(seed % 3);
    options.domain_size = 3;
    options.min_domain_size = 2;
    nets.push_back(random_cpnet(options, seed));
  }
  for (const CPNet& net : nets) {
    const std::uint64_t count = outcome_count(net);
    for (std::uint64_t code = 0; code < count; ++code) {
      const Outcome o = decode_outcome(net, code);
      CHECK(is_optimal(net, o) == is_locally_optimal(net, o));
    }
  }
}

TEST_CASE("every returned witness re-validates step by step") {
  for (const CPNet& net : small_random_nets(25, 3, 2, 500)) {
    const std::uint64_t count = outcome_count(net);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (std::uint64_t j = 0; j < count; ++j) {
        const auto witness =
            better(net, decode_outcome(net, i), decode_outcome(net, j));
        if (witness) CHECK(witness_valid(net, *witness));
      }
    }
  }
}

TEST_CASE("witness chains concatenate transitively") {
  for (const CPNet& net : small_random_nets(25, 3, 2, 900)) {
    const std::uint64_t count = outcome_count(net);
    for (std::uint64_t i = 0; i < count; ++i) {
      for (std::uint64_t j = 0; j < count; ++j) {
        if (i == j) continue;
        const Outcome a = decode_outcome(net, i);
        const Outcome b = decode_outcome(net, j);
        const auto ab = better(net, a, b);
        if (!ab) continue;
        for (std::uint64_t k = 0; k < count; ++k) {
          const Outcome c = decode_outcome(net, k);
          const auto bc = better(net, b, c);
          if (!bc) continue;
          BetternessWitness joined = *ab;
          joined.chain.insert(joined.chain.end(), bc->chain.begin() + 1,
                              bc->chain.end());
          CHECK(witness_valid(net, joined));
          CHECK(better(net, a, c).has_value());
        }
      }
    }
  }
}

TEST_CASE("semantics operations are deterministic") {
  const CPNet net = cyclic4_net();
  CHECK(worsening_flips(net, {0, 1, 0, 1}) == worsening_flips(net, {0, 1, 0, 1}));
  CHECK(optimal_outcomes(net) == optimal_outcomes(net));
  const auto first = better(net, {0, 1, 0, 1}, {0, 0, 0, 0});
  const auto second = better(net, {0, 1, 0, 1}, {0, 0, 0, 0});
  REQUIRE(first.has_value() == second.has_value());
  if (first) CHECK(first->chain == second->chain);
}
