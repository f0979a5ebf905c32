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

#ifndef CPNETS_REDUCTION_HPP_
#define CPNETS_REDUCTION_HPP_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cpnets/core.hpp"

namespace cpnets {

// A parent is redundant when the child's row never depends on it: for every
// assignment to the remaining parents, the rows across the parent's values
// coincide. Dropping a certified redundant parent changes no table lookup.
struct RedundancyFinding {
  VarIndex child;
  VarIndex redundant_parent;

  bool operator==(const RedundancyFinding&) const = default;
};

namespace detail {

// Position of y in x's parent list, or -1.
inline int parent_position(const CPNet& net, VarIndex x, VarIndex y) {
  const auto& parents = net.tables[x].parents;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (parents[i] == y) return static_cast<int>(i);
  }
  return -1;
}

inline bool parent_redundant_at(const CPNet& net, VarIndex x, int position) {
  const auto& table = net.tables[x];
  const auto radices = net.parent_radices(x);

  std::vector<int> rest_radices;
  for (std::size_t i = 0; i < radices.size(); ++i) {
    if (static_cast<int>(i) != position) rest_radices.push_back(radices[i]);
  }
  const std::uint64_t rest_count =
      checked_product(rest_radices, table.rows.size()).value_or(0);
  const int y_size = radices[position];

  std::vector<ValueIndex> full(radices.size(), 0);
  for (std::uint64_t rest_key = 0; rest_key < rest_count; ++rest_key) {
    const auto rest = decode_mixed_radix(rest_key, rest_radices);
    for (std::size_t i = 0, r = 0; i < full.size(); ++i) {
      if (static_cast<int>(i) != position) full[i] = rest[r++];
    }
    full[position] = 0;
    const TotalOrder& reference = table.rows[encode_mixed_radix(full, radices)];
    for (ValueIndex y_value = 1; y_value < y_size; ++y_value) {
      full[position] = y_value;
      if (table.rows[encode_mixed_radix(full, radices)] != reference) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace detail

// Whether y is a redundant parent of x (false when y is not a parent at all).
inline bool parent_redundant(const CPNet& net, VarIndex x, VarIndex y) {
  const int position = detail::parent_position(net, x, y);
  if (position < 0) return false;
  return detail::parent_redundant_at(net, x, position);
}

// Every individually redundant parent of x, certified by exhaustive row
// comparison, in ascending parent order.
inline std::vector<RedundancyFinding> redundant_parents(const CPNet& net,
                                                        VarIndex x) {
  std::vector<RedundancyFinding> findings;
  const auto& parents = net.tables[x].parents;
  for (std::size_t i = 0; i < parents.size(); ++i) {
    if (detail::parent_redundant_at(net, x, static_cast<int>(i))) {
      findings.push_back({x, parents[i]});
    }
  }
  return findings;
}

// Re-keys x's table on its parents minus y. Every new row is taken from the
// y=0 extension of its key, which the certification makes representative.
// Refuses to drop a non-redundant parent, since that would change lookups.
inline CPNet drop_parent(const CPNet& net, VarIndex x, VarIndex y) {
  const int position = detail::parent_position(net, x, y);
  if (position < 0) {
    throw std::invalid_argument("drop_parent: '" + net.variables[y].name +
                                "' is not a parent of '" +
                                net.variables[x].name + "'");
  }
  if (!detail::parent_redundant_at(net, x, position)) {
    throw std::invalid_argument("drop_parent: '" + net.variables[y].name +
                                "' is not redundant for '" +
                                net.variables[x].name + "'");
  }

  const auto old_radices = net.parent_radices(x);
  const auto& old_table = net.tables[x];

  std::vector<VarIndex> new_parents;
  for (VarIndex p : old_table.parents) {
    if (p != y) new_parents.push_back(p);
  }

  CPNet result = net;
  result.set_parents(x, new_parents);  // stays sorted: erasing keeps order
  const auto new_radices = result.parent_radices(x);
  const std::uint64_t new_count = result.tables[x].rows.size();
  std::vector<ValueIndex> full(old_radices.size(), 0);
  for (std::uint64_t new_key = 0; new_key < new_count; ++new_key) {
    const auto rest = decode_mixed_radix(new_key, new_radices);
    for (std::size_t i = 0, r = 0; i < full.size(); ++i) {
      full[i] = static_cast<int>(i) == position ? 0 : rest[r++];
    }
    result.set_row_by_key(x, new_key,
                          old_table.rows[encode_mixed_radix(full, old_radices)]);
  }
  return result;
}

// The reduced net r(N): repeatedly drops certified redundant parents until
// none remains. Deterministic order: variables ascending, parents ascending,
// rescanning from scratch after every drop. The final net has no redundant
// parent anywhere; order-independence of the fixpoint is checked empirically
// by the tests rather than assumed.
inline CPNet reduce(const CPNet& net) {
  CPNet current = net;
  bool dropped = true;
  while (dropped) {
    dropped = false;
    for (VarIndex x = 0; x < current.variable_count() && !dropped; ++x) {
      const auto findings = redundant_parents(current, x);
      if (!findings.empty()) {
        current = drop_parent(current, x, findings.front().redundant_parent);
        dropped = true;
      }
    }
  }
  return current;
}

inline bool is_reduced(const CPNet& net) {
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    if (!redundant_parents(net, x).empty()) return false;
  }
  return true;
}

}  // namespace cpnets

#endif  // CPNETS_REDUCTION_HPP_
