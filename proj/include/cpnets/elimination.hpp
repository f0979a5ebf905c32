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

#ifndef CPNETS_ELIMINATION_HPP_
#define CPNETS_ELIMINATION_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cpnets/core.hpp"

namespace cpnets {

// Values of x that rank first in at least one row of x's table, ascending.
inline std::vector<ValueIndex> best_responses(const CPNet& net, VarIndex x) {
  std::vector<bool> tops(net.domain_size(x), false);
  for (const TotalOrder& row : net.tables[x].rows) tops[row.top()] = true;
  std::vector<ValueIndex> result;
  for (ValueIndex v = 0; v < net.domain_size(x); ++v) {
    if (tops[v]) result.push_back(v);
  }
  return result;
}

// Values of x that top no row at all: the domain minus the best responses.
inline std::vector<ValueIndex> never_best_responses(const CPNet& net,
                                                    VarIndex x) {
  std::vector<bool> tops(net.domain_size(x), false);
  for (const TotalOrder& row : net.tables[x].rows) tops[row.top()] = true;
  std::vector<ValueIndex> result;
  for (ValueIndex v = 0; v < net.domain_size(x); ++v) {
    if (!tops[v]) result.push_back(v);
  }
  return result;
}

// All (dominated, dominator) pairs for x: the dominator beats the dominated
// value in every row. Ordered by dominated value, then dominator.
inline std::vector<std::pair<ValueIndex, ValueIndex>> strictly_dominated(
    const CPNet& net, VarIndex x) {
  std::vector<std::pair<ValueIndex, ValueIndex>> pairs;
  const int size = net.domain_size(x);
  for (ValueIndex dominated = 0; dominated < size; ++dominated) {
    for (ValueIndex dominator = 0; dominator < size; ++dominator) {
      if (dominator == dominated) continue;
      bool everywhere = true;
      for (const TotalOrder& row : net.tables[x].rows) {
        if (!row.prefers(dominator, dominated)) {
          everywhere = false;
          break;
        }
      }
      if (everywhere) pairs.push_back({dominated, dominator});
    }
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Subnet construction: deleting a value removes it from its variable's
// rankings and deletes every child row keyed by it. Value indices above the
// removed one shift down; tokens are the stable identities.

inline CPNet remove_value(const CPNet& net, VarIndex x, ValueIndex v) {
  if (net.domain_size(x) < 2) {
    throw std::invalid_argument("remove_value: cannot remove the last value of '" +
                                net.variables[x].name + "'");
  }
  if (v < 0 || v >= net.domain_size(x)) {
    throw std::invalid_argument("remove_value: value index out of range");
  }

  CPNet result;
  for (VarIndex i = 0; i < net.variable_count(); ++i) {
    std::vector<std::string> domain = net.variables[i].domain;
    if (i == x) domain.erase(domain.begin() + v);
    result.add_variable(net.variables[i].name, std::move(domain));
  }

  auto remap = [&](ValueIndex w) { return w > v ? w - 1 : w; };

  for (VarIndex i = 0; i < net.variable_count(); ++i) {
    const auto& old_table = net.tables[i];
    result.set_parents(i, old_table.parents);
    const auto old_radices = net.parent_radices(i);
    const auto new_radices = result.parent_radices(i);
    const std::uint64_t new_count = result.tables[i].rows.size();
    for (std::uint64_t new_key = 0; new_key < new_count; ++new_key) {
      // Map the new parent assignment back into the old key space.
      auto assignment = decode_mixed_radix(new_key, new_radices);
      for (std::size_t pi = 0; pi < assignment.size(); ++pi) {
        if (old_table.parents[pi] == x && assignment[pi] >= v) {
          ++assignment[pi];
        }
      }
      const TotalOrder& old_row =
          old_table.rows[encode_mixed_radix(assignment, old_radices)];
      TotalOrder row;
      if (i == x) {
        row.ranking.reserve(old_row.ranking.size() - 1);
        for (ValueIndex w : old_row.ranking) {
          if (w != v) row.ranking.push_back(remap(w));
        }
      } else {
        row = old_row;
      }
      result.set_row_by_key(i, new_key, std::move(row));
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Iterated elimination.

enum class EliminationKind { kNeverBestResponse, kStrictlyDominated };

inline const char* to_string(EliminationKind kind) {
  return kind == EliminationKind::kNeverBestResponse ? "nbr" : "dominated";
}

struct EliminationStep {
  VarIndex variable;
  std::string variable_name;
  ValueIndex removed_value;   // index in the net current at this step
  std::string removed_token;  // stable across later removals
  EliminationKind kind;
  std::optional<ValueIndex> dominator;  // set for strictly-dominated steps
  std::optional<std::string> dominator_token;

  bool operator==(const EliminationStep&) const = default;
};

struct EliminationTrace {
  CPNet initial;
  CPNet final;
  std::vector<EliminationStep> steps;
};

// Chooses which candidate step to apply; candidates arrive ordered by
// variable index, then value index. The default policy takes the first.
using EliminationPolicy =
    std::function<std::size_t(const CPNet&, const std::vector<EliminationStep>&)>;

namespace detail {

inline std::vector<EliminationStep> elimination_candidates(
    const CPNet& net, EliminationKind kind) {
  std::vector<EliminationStep> candidates;
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    if (kind == EliminationKind::kNeverBestResponse) {
      for (ValueIndex v : never_best_responses(net, x)) {
        candidates.push_back({x, net.variables[x].name, v,
                              net.variables[x].domain[v], kind, std::nullopt,
                              std::nullopt});
      }
    } else {
      const auto pairs = strictly_dominated(net, x);
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        // One candidate per dominated value, with its lowest-index dominator.
        if (i > 0 && pairs[i].first == pairs[i - 1].first) continue;
        const auto [dominated, dominator] = pairs[i];
        candidates.push_back({x, net.variables[x].name, dominated,
                              net.variables[x].domain[dominated], kind,
                              dominator, net.variables[x].domain[dominator]});
      }
    }
  }
  return candidates;
}

}  // namespace detail

// Repeats single-value removals justified by `kind` until none applies. The
// returned trace replays from the initial net to the final one. With no
// policy given, the scan removes the lowest-indexed eliminable value of the
// lowest-indexed variable and restarts.
inline EliminationTrace eliminate(const CPNet& net, EliminationKind kind,
                                  const EliminationPolicy& policy = {}) {
  EliminationTrace trace;
  trace.initial = net;
  CPNet current = net;
  for (;;) {
    auto candidates = detail::elimination_candidates(current, kind);
    if (candidates.empty()) break;
    const std::size_t pick = policy ? policy(current, candidates) % candidates.size() : 0;
    EliminationStep step = candidates[pick];
    current = remove_value(current, step.variable, step.removed_value);
    trace.steps.push_back(std::move(step));
  }
  trace.final = std::move(current);
  return trace;
}

// Applies a trace's steps to its initial net. Tokens identify the removed
// values, so replay is robust to the index shifts removals cause.
inline CPNet replay(const EliminationTrace& trace) {
  CPNet current = trace.initial;
  for (const EliminationStep& step : trace.steps) {
    const ValueIndex v = current.value_index(step.variable, step.removed_token);
    if (v < 0) {
      throw std::invalid_argument("replay: token '" + step.removed_token +
                                  "' not present in '" + step.variable_name +
                                  "'");
    }
    current = remove_value(current, step.variable, v);
  }
  return current;
}

// The single outcome of an all-singleton net, absent otherwise.
inline std::optional<Outcome> unique_outcome(const CPNet& net) {
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    if (net.domain_size(x) != 1) return std::nullopt;
  }
  return Outcome(net.variable_count(), 0);
}

// ---------------------------------------------------------------------------
// Forward sweep for acyclic nets: in topological order, each variable takes
// the top value of the row its already-assigned parents select. Exactly one
// table lookup per variable.

struct SolveStats {
  std::size_t table_lookups = 0;
};

inline Outcome solve_acyclic(const CPNet& net, SolveStats* stats = nullptr) {
  const auto order = topological_order(net);
  if (!order) {
    throw std::invalid_argument("solve_acyclic: the dependency graph is cyclic");
  }
  Outcome outcome(net.variable_count(), -1);
  SolveStats local;
  for (VarIndex x : *order) {
    const TotalOrder& row = lookup_order(net, x, outcome);
    ++local.table_lookups;
    outcome[x] = row.top();
  }
  if (stats) *stats = local;
  return outcome;
}

}  // namespace cpnets

#endif  // CPNETS_ELIMINATION_HPP_
