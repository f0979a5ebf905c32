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

#include "cpnets/core.hpp"
#include "cpnets/io.hpp"
#include "test_util.hpp"

using namespace cpnets;
using namespace testutil;

TEST_CASE("validate accepts the worked nets") {
  CHECK(validate(cyclic4_net()).ok());
  CHECK(validate(acyclic4_net()).ok());
  CHECK(validate(two_cycle_net()).ok());
  CHECK(validate(shared_row_net()).ok());
}

TEST_CASE("validate accepts the smallest net") {
  CPNet net;
  const int x = net.add_variable("X", {"x", "y"});
  net.set_row(x, {}, {{0, 1}});
  CHECK(validate(net).ok());
}

TEST_CASE("validate reports a deleted row as missing") {
  CPNet net = cyclic4_net();
  net.tables[0].rows[1] = TotalOrder{};  // drop A's row for D=dbar
  const auto report = validate(net);
  REQUIRE(report.violations.size() == 1);
  CHECK(report.violations[0].kind == ViolationKind::kMissingRow);
  CHECK(report.violations[0].variable == 0);
  CHECK(report.violations[0].row == 1);
}

TEST_CASE("validate collects every kind of violation") {
  SUBCASE("duplicate name") {
    CPNet net;
    net.add_variable("X", {"x", "y"});
    net.add_variable("X", {"x", "y"});
    net.set_row(0, {}, {{0, 1}});
    net.set_row(1, {}, {{0, 1}});
    const auto report = validate(net);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::kDuplicateName);
    CHECK(report.violations[0].variable == 1);
  }
  SUBCASE("bad name and bad domain") {
    CPNet net;
    net.add_variable("2X", {"x", "x"});
    net.set_row(0, {}, {{0, 1}});
    const auto report = validate(net);
    REQUIRE(report.violations.size() == 2);
    CHECK(report.violations[0].kind == ViolationKind::kBadName);
    CHECK(report.violations[1].kind == ViolationKind::kBadDomain);
  }
  SUBCASE("non-permutation row") {
    CPNet net;
    net.add_variable("X", {"x", "y"});
    net.set_row(0, {}, {{0, 0}});
    const auto report = validate(net);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::kNonPermutation);
  }
  SUBCASE("short row is also a non-permutation") {
    CPNet net;
    net.add_variable("X", {"x", "y", "z"});
    net.set_row(0, {}, {{0, 1}});
    CHECK(validate(net).violations[0].kind == ViolationKind::kNonPermutation);
  }
  SUBCASE("bad parent: out of range, self, repeated") {
    CPNet net = cyclic4_net();
    net.tables[0].parents = {9};
    CHECK(validate(net).violations[0].kind == ViolationKind::kBadParent);
    net.tables[0].parents = {0};
    CHECK(validate(net).violations[0].kind == ViolationKind::kBadParent);
    net.tables[0].parents = {3, 3};
    bool found = false;
    for (const auto& v : validate(net).violations) {
      found = found || v.kind == ViolationKind::kBadParent;
    }
    CHECK(found);
  }
  SUBCASE("duplicate row") {
    CPNet net;
    net.add_variable("X", {"x", "y"});
    net.set_row(0, {}, {{0, 1}});
    net.set_row(0, {}, {{1, 0}});
    const auto report = validate(net);
    REQUIRE(report.violations.size() == 1);
    CHECK(report.violations[0].kind == ViolationKind::kDuplicateRow);
  }
  SUBCASE("table above the configured limit") {
    const CPNet net = acyclic4_net();  // C has four rows
    bool found = false;
    for (const auto& v : validate(net, /*max_table_rows=*/2).violations) {
      found = found || (v.kind == ViolationKind::kTableTooLarge && v.variable == 2);
    }
    CHECK(found);
  }
}

TEST_CASE("validate is pure and idempotent") {
  CPNet net = cyclic4_net();
  net.tables[0].rows[1] = TotalOrder{};
  const auto first = validate(net);
  const auto second = validate(net);
  CHECK(first.violations == second.violations);
}

TEST_CASE("dependency_graph edges follow the parent sets") {
  SUBCASE("chain cycle") {
    const auto graph = dependency_graph(cyclic4_net());
    CHECK(graph.successors[0] == std::vector<VarIndex>{1});
    CHECK(graph.successors[1] == std::vector<VarIndex>{2});
    CHECK(graph.successors[2] == std::vector<VarIndex>{3});
    CHECK(graph.successors[3] == std::vector<VarIndex>{0});
  }
  SUBCASE("diamond-ish dag") {
    const auto graph = dependency_graph(acyclic4_net());
    CHECK(graph.successors[0] == std::vector<VarIndex>{2});
    CHECK(graph.successors[1] == std::vector<VarIndex>{2});
    CHECK(graph.successors[2] == std::vector<VarIndex>{3});
    CHECK(graph.successors[3].empty());
  }
  SUBCASE("no parents, no edges") {
    CPNet net;
    net.add_variable("X", {"x", "y"});
    net.add_variable("Y", {"x", "y"});
    net.set_row(0, {}, {{0, 1}});
    net.set_row(1, {}, {{0, 1}});
    const auto graph = dependency_graph(net);
    CHECK(graph.successors[0].empty());
    CHECK(graph.successors[1].empty());
  }
}

TEST_CASE("topological_order detects cycles and orders parents first") {
  CHECK_FALSE(is_acyclic(cyclic4_net()));
  CHECK_FALSE(is_acyclic(two_cycle_net()));

  const auto order = topological_order(acyclic4_net());
  REQUIRE(order.has_value());
  auto position = [&](VarIndex x) {
    for (std::size_t i = 0; i < order->size(); ++i) {
      if ((*order)[i] == x) return static_cast<int>(i);
    }
    return -1;
  };
  CHECK(position(0) < position(2));
  CHECK(position(1) < position(2));
  CHECK(position(2) < position(3));

  CPNet single;
  single.add_variable("X", {"x"});
  single.set_row(0, {}, {{0}});
  CHECK(topological_order(single) == std::vector<VarIndex>{0});
}

TEST_CASE("is_acyclic agrees with an independent DFS cycle check") {
  for (std::uint64_t seed = 0; seed < 120; ++seed) {
    NetGenOptions options;
    options.variables = 2 + static_cast<int>(seed % 4);
    options.domain_size = 2;
    options.acyclic = seed % 3 == 0;
    const CPNet net = random_cpnet(options, seed);
    CAPTURE(seed);
    CHECK(is_acyclic(net) == !dfs_has_cycle(net));
  }
}

TEST_CASE("project selects positions in the requested order") {
  const Outcome abcd = {0, 0, 0, 0};
  CHECK(project(abcd, {0, 2}) == std::vector<ValueIndex>{0, 0});
  CHECK(project(abcd, {}).empty());

  const Outcome mixed = {0, 1, 0, 1};  // a bbar c dbar
  const auto selected = project(mixed, {3, 1});
  CHECK(selected == std::vector<ValueIndex>{mixed[3], mixed[1]});

  CHECK_THROWS_AS(project(abcd, {9}), std::invalid_argument);
  CHECK_THROWS_AS(project(abcd, {1, 1}), std::invalid_argument);
}

TEST_CASE("lookup_order keys on the parent coordinates only") {
  const CPNet net = cyclic4_net();
  const Outcome with_a1 = {0, 0, 0, 0};
  const Outcome with_a2 = {0, 1, 1, 1};
  CHECK(lookup_order(net, 1, with_a1).ranking == std::vector<ValueIndex>{0, 1});
  CHECK(lookup_order(net, 1, with_a2).ranking == std::vector<ValueIndex>{0, 1});

  const Outcome with_abar = {1, 0, 0, 0};
  CHECK(lookup_order(net, 1, with_abar).ranking == std::vector<ValueIndex>{1, 0});

  // A parentless variable has one row, whatever the outcome.
  const CPNet dag = acyclic4_net();
  for (int code = 0; code < 16; ++code) {
    CHECK(lookup_order(dag, 0, decode_outcome(dag, code)).ranking ==
          std::vector<ValueIndex>{0, 1});
  }
}

TEST_CASE("lookup_order locality over all outcome pairs") {
  // Whenever two outcomes agree on a variable's parents, the applicable row
  // is the same. Exhaustive over nets with at most 4 binary variables.
  std::vector<CPNet> nets = {cyclic4_net(), acyclic4_net(), two_cycle_net()};
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    NetGenOptions options;
    options.variables = 4;
    options.domain_size = 2;
    nets.push_back(random_cpnet(options, seed));
  }
  for (const CPNet& net : nets) {
    const std::uint64_t count = outcome_count(net);
    for (std::uint64_t i = 0; i < count; ++i) {
      const Outcome left = decode_outcome(net, i);
      for (std::uint64_t j = 0; j < count; ++j) {
        const Outcome right = decode_outcome(net, j);
        for (VarIndex x = 0; x < net.variable_count(); ++x) {
          if (project(left, net.tables[x].parents) ==
              project(right, net.tables[x].parents)) {
            CHECK(lookup_order(net, x, left) == lookup_order(net, x, right));
          }
        }
      }
    }
  }
}

TEST_CASE("lookup_order always returns a permutation of the domain") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    NetGenOptions options;
    options.variables = 3;
    options.domain_size = 3;
    options.min_domain_size = 2;
    const CPNet net = random_cpnet(options, seed);
    const std::uint64_t count = outcome_count(net);
    for (std::uint64_t code = 0; code < count; ++code) {
      const Outcome o = decode_outcome(net, code);
      for (VarIndex x = 0; x < net.variable_count(); ++x) {
        CHECK(lookup_order(net, x, o).is_permutation_of(net.domain_size(x)));
      }
    }
  }
}

TEST_CASE("mixed-radix encoding round-trips") {
  const std::vector<int> radices = {2, 3, 2};
  for (std::uint64_t key = 0; key < 12; ++key) {
    CHECK(encode_mixed_radix(decode_mixed_radix(key, radices), radices) == key);
  }
  CHECK(checked_product({2, 3, 2}, 12) == 12);
  CHECK_FALSE(checked_product({2, 3, 2}, 11).has_value());
}
