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

#ifndef CPNETS_CORE_HPP_
#define CPNETS_CORE_HPP_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cpnets {

// Variables and values are referenced by dense integer indices everywhere;
// display names and value tokens exist only at the I/O boundary.
using VarIndex = int;
using ValueIndex = int;

// A complete assignment of one value index per variable, in variable-index
// order. Joint strategies of a game have the same shape.
using Outcome = std::vector<ValueIndex>;

inline constexpr std::uint64_t kDefaultMaxTableRows = 4096;
inline constexpr std::uint64_t kDefaultMaxOutcomes = std::uint64_t{1} << 20;

// Thrown when an operation would exceed its configured outcome or table-size
// ceiling. The CLI maps this to its own exit code.
class SizeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Mixed-radix keys.
//
// Parent assignments and outcomes are encoded as mixed-radix integers with
// the first digit most significant, so iterating keys 0..N-1 enumerates
// assignments lexicographically. All dense tables are indexed this way.

inline std::uint64_t encode_mixed_radix(const std::vector<ValueIndex>& digits,
                                        const std::vector<int>& radices) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    key = key * static_cast<std::uint64_t>(radices[i]) +
          static_cast<std::uint64_t>(digits[i]);
  }
  return key;
}

inline std::vector<ValueIndex> decode_mixed_radix(
    std::uint64_t key, const std::vector<int>& radices) {
  std::vector<ValueIndex> digits(radices.size(), 0);
  for (std::size_t i = radices.size(); i-- > 0;) {
    const auto radix = static_cast<std::uint64_t>(radices[i]);
    digits[i] = static_cast<ValueIndex>(key % radix);
    key /= radix;
  }
  return digits;
}

// Product of radices, or nullopt when it exceeds `cap` (overflow-safe).
inline std::optional<std::uint64_t> checked_product(
    const std::vector<int>& radices, std::uint64_t cap) {
  std::uint64_t product = 1;
  for (int r : radices) {
    if (r <= 0) return std::nullopt;
    if (product > cap / static_cast<std::uint64_t>(r)) return std::nullopt;
    product *= static_cast<std::uint64_t>(r);
    if (product > cap) return std::nullopt;
  }
  return product;
}

// ---------------------------------------------------------------------------
// TotalOrder: a strict linear order over a variable's domain, most-preferred
// value first. The weak order is "strictly before in the ranking, or equal".

struct TotalOrder {
  std::vector<ValueIndex> ranking;

  bool operator==(const TotalOrder&) const = default;

  bool empty() const { return ranking.empty(); }
  ValueIndex top() const { return ranking.front(); }

  // Position of `value` in the ranking; -1 when absent.
  int rank_of(ValueIndex value) const {
    for (std::size_t i = 0; i < ranking.size(); ++i) {
      if (ranking[i] == value) return static_cast<int>(i);
    }
    return -1;
  }

  // a strictly preferred to b.
  bool prefers(ValueIndex a, ValueIndex b) const {
    return rank_of(a) < rank_of(b);
  }

  // a weakly preferred to b (strictly preferred or equal).
  bool weakly_prefers(ValueIndex a, ValueIndex b) const {
    return a == b || prefers(a, b);
  }

  bool is_permutation_of(int domain_size) const {
    if (ranking.size() != static_cast<std::size_t>(domain_size)) return false;
    std::vector<bool> seen(domain_size, false);
    for (ValueIndex v : ranking) {
      if (v < 0 || v >= domain_size || seen[v]) return false;
      seen[v] = true;
    }
    return true;
  }
};

// ---------------------------------------------------------------------------
// PreferenceTable: one conditional preference table. Rows are stored densely,
// one slot per parent assignment, keyed by the mixed-radix encoding of the
// assignment in parent-list order. An empty ranking marks an unset slot, so
// completeness is a fill check. Parents are kept sorted by variable index;
// this makes the serialized form canonical.

struct PreferenceTable {
  std::vector<VarIndex> parents;
  std::vector<TotalOrder> rows;
  // Keys that were set more than once while building; validation reports them.
  std::vector<std::uint64_t> duplicate_rows;

  bool operator==(const PreferenceTable&) const = default;
};

struct Variable {
  std::string name;
  std::vector<std::string> domain;  // value tokens; declaration order

  bool operator==(const Variable&) const = default;
};

// ---------------------------------------------------------------------------
// CPNet: the network itself. Construction goes through add_variable /
// set_parents / set_row; all other mutation is done by the operations in
// reduction.hpp and elimination.hpp, which return new nets.

struct CPNet {
  std::vector<Variable> variables;
  std::vector<PreferenceTable> tables;

  bool operator==(const CPNet&) const = default;

  int variable_count() const { return static_cast<int>(variables.size()); }

  int domain_size(VarIndex x) const {
    return static_cast<int>(variables[x].domain.size());
  }

  // -1 when no variable carries `name`.
  VarIndex variable_index(std::string_view name) const {
    for (std::size_t i = 0; i < variables.size(); ++i) {
      if (variables[i].name == name) return static_cast<VarIndex>(i);
    }
    return -1;
  }

  // -1 when `token` is not a value of x's domain.
  ValueIndex value_index(VarIndex x, std::string_view token) const {
    const auto& domain = variables[x].domain;
    for (std::size_t i = 0; i < domain.size(); ++i) {
      if (domain[i] == token) return static_cast<ValueIndex>(i);
    }
    return -1;
  }

  std::vector<int> parent_radices(VarIndex x) const {
    std::vector<int> radices;
    radices.reserve(tables[x].parents.size());
    for (VarIndex p : tables[x].parents) radices.push_back(domain_size(p));
    return radices;
  }

  std::vector<int> domain_sizes() const {
    std::vector<int> sizes;
    sizes.reserve(variables.size());
    for (const auto& v : variables) sizes.push_back(static_cast<int>(v.domain.size()));
    return sizes;
  }

  std::uint64_t row_count(VarIndex x) const { return tables[x].rows.size(); }

  std::uint64_t row_key(VarIndex x, const std::vector<ValueIndex>& parent_values) const {
    return encode_mixed_radix(parent_values, parent_radices(x));
  }

  VarIndex add_variable(std::string name, std::vector<std::string> domain) {
    variables.push_back({std::move(name), std::move(domain)});
    tables.push_back({{}, {TotalOrder{}}, {}});  // independent, one unset row
    return static_cast<VarIndex>(variables.size() - 1);
  }

  // Replaces x's parent list (sorted by index) and resets its rows to unset.
  // Refuses absurd dense allocations; the configurable validation limit is
  // lower and checked by validate().
  void set_parents(VarIndex x, std::vector<VarIndex> parents) {
    std::sort(parents.begin(), parents.end());
    std::vector<int> radices;
    radices.reserve(parents.size());
    for (VarIndex p : parents) {
      radices.push_back(p >= 0 && p < variable_count() ? domain_size(p) : 1);
    }
    const auto slots = checked_product(radices, std::uint64_t{1} << 22);
    if (!slots) {
      throw SizeLimitError("parent domain product too large to store densely");
    }
    tables[x].parents = std::move(parents);
    tables[x].rows.assign(*slots, TotalOrder{});
    tables[x].duplicate_rows.clear();
  }

  // Fills the row keyed by `parent_values` (given in parent-list order).
  // Setting a row twice records a duplicate; the first write wins.
  void set_row(VarIndex x, const std::vector<ValueIndex>& parent_values,
               TotalOrder order) {
    const std::uint64_t key = row_key(x, parent_values);
    set_row_by_key(x, key, std::move(order));
  }

  void set_row_by_key(VarIndex x, std::uint64_t key, TotalOrder order) {
    auto& table = tables[x];
    if (key >= table.rows.size()) {
      throw std::invalid_argument("row key out of range");
    }
    if (!table.rows[key].empty()) {
      table.duplicate_rows.push_back(key);
      return;
    }
    table.rows[key] = std::move(order);
  }
};

// ---------------------------------------------------------------------------
// Validation. Violations are data, not failures: validate never throws and
// collects everything it finds, so diagnostics can show the full picture.

enum class ViolationKind {
  kBadName,        // display name empty or not an identifier
  kDuplicateName,  // display name already used by an earlier variable
  kBadDomain,      // empty domain, duplicate tokens, or non-identifier tokens
  kBadParent,      // parent index out of range, self, or repeated
  kMissingRow,     // a parent assignment has no row
  kDuplicateRow,   // a parent assignment was specified more than once
  kNonPermutation, // a row's ranking is not a permutation of the domain
  kTableTooLarge,  // parent-domain product exceeds the configured limit
};

inline const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kBadName: return "bad-name";
    case ViolationKind::kDuplicateName: return "duplicate-name";
    case ViolationKind::kBadDomain: return "bad-domain";
    case ViolationKind::kBadParent: return "bad-parent";
    case ViolationKind::kMissingRow: return "missing-row";
    case ViolationKind::kDuplicateRow: return "duplicate-row";
    case ViolationKind::kNonPermutation: return "non-permutation";
    case ViolationKind::kTableTooLarge: return "table-too-large";
  }
  return "unknown";
}

struct Violation {
  ViolationKind kind;
  VarIndex variable = -1;
  std::int64_t row = -1;  // mixed-radix row key when applicable
  std::string detail;

  bool operator==(const Violation&) const = default;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

inline bool is_identifier(std::string_view token) {
  if (token.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
  };
  auto alnum = [&](char c) { return alpha(c) || (c >= '0' && c <= '9'); };
  if (!alpha(token[0])) return false;
  for (char c : token.substr(1)) {
    if (!alnum(c)) return false;
  }
  return true;
}

inline ValidationReport validate(
    const CPNet& net, std::uint64_t max_table_rows = kDefaultMaxTableRows) {
  ValidationReport report;
  auto add = [&](ViolationKind kind, VarIndex x, std::int64_t row,
                 std::string detail) {
    report.violations.push_back({kind, x, row, std::move(detail)});
  };

  const int n = net.variable_count();
  for (VarIndex x = 0; x < n; ++x) {
    const auto& var = net.variables[x];
    if (!is_identifier(var.name)) {
      add(ViolationKind::kBadName, x, -1,
          "variable name '" + var.name + "' is not an identifier");
    }
    for (VarIndex earlier = 0; earlier < x; ++earlier) {
      if (net.variables[earlier].name == var.name) {
        add(ViolationKind::kDuplicateName, x, -1,
            "variable name '" + var.name + "' already declared");
        break;
      }
    }
    if (var.domain.empty()) {
      add(ViolationKind::kBadDomain, x, -1, "domain is empty");
    }
    for (std::size_t i = 0; i < var.domain.size(); ++i) {
      if (!is_identifier(var.domain[i])) {
        add(ViolationKind::kBadDomain, x, -1,
            "value token '" + var.domain[i] + "' is not an identifier");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (var.domain[j] == var.domain[i]) {
          add(ViolationKind::kBadDomain, x, -1,
              "value token '" + var.domain[i] + "' repeated in domain");
          break;
        }
      }
    }
  }

  for (VarIndex x = 0; x < n; ++x) {
    const auto& table = net.tables[x];
    bool parents_ok = true;
    for (std::size_t i = 0; i < table.parents.size(); ++i) {
      const VarIndex p = table.parents[i];
      if (p < 0 || p >= n) {
        add(ViolationKind::kBadParent, x, -1,
            "parent index " + std::to_string(p) + " out of range");
        parents_ok = false;
      } else if (p == x) {
        add(ViolationKind::kBadParent, x, -1, "variable is its own parent");
        parents_ok = false;
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (table.parents[j] == p) {
          add(ViolationKind::kBadParent, x, -1,
              "parent index " + std::to_string(p) + " repeated");
          parents_ok = false;
          break;
        }
      }
    }
    if (!parents_ok) continue;  // row keys are meaningless with bad parents

    const auto radices = net.parent_radices(x);
    const auto expected = checked_product(radices, max_table_rows);
    if (!expected) {
      add(ViolationKind::kTableTooLarge, x, -1,
          "parent-domain product exceeds limit of " +
              std::to_string(max_table_rows) + " rows");
      continue;
    }
    const int domain_size = net.domain_size(x);
    for (std::uint64_t key = 0; key < *expected; ++key) {
      if (key >= table.rows.size() || table.rows[key].empty()) {
        add(ViolationKind::kMissingRow, x, static_cast<std::int64_t>(key),
            "no row for this parent assignment");
      } else if (!table.rows[key].is_permutation_of(domain_size)) {
        add(ViolationKind::kNonPermutation, x, static_cast<std::int64_t>(key),
            "ranking is not a permutation of the domain");
      }
    }
    for (std::uint64_t key : table.duplicate_rows) {
      add(ViolationKind::kDuplicateRow, x, static_cast<std::int64_t>(key),
          "parent assignment specified more than once");
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Dependency graph and topological order.

struct Digraph {
  std::vector<std::vector<VarIndex>> successors;

  int node_count() const { return static_cast<int>(successors.size()); }
};

// Edge p -> x iff p is a parent of x.
inline Digraph dependency_graph(const CPNet& net) {
  Digraph graph;
  graph.successors.resize(net.variable_count());
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    for (VarIndex p : net.tables[x].parents) {
      graph.successors[p].push_back(x);
    }
  }
  return graph;
}

// A topological order of the dependency graph (parents before children),
// smallest index first among the ready nodes; nullopt when cyclic.
inline std::optional<std::vector<VarIndex>> topological_order(const CPNet& net) {
  const int n = net.variable_count();
  std::vector<int> pending(n);
  for (VarIndex x = 0; x < n; ++x) {
    pending[x] = static_cast<int>(net.tables[x].parents.size());
  }
  const Digraph graph = dependency_graph(net);
  std::vector<VarIndex> order;
  std::vector<bool> placed(n, false);
  order.reserve(n);
  for (int step = 0; step < n; ++step) {
    VarIndex next = -1;
    for (VarIndex x = 0; x < n; ++x) {
      if (!placed[x] && pending[x] == 0) {
        next = x;
        break;
      }
    }
    if (next < 0) return std::nullopt;
    placed[next] = true;
    order.push_back(next);
    for (VarIndex child : graph.successors[next]) --pending[child];
  }
  return order;
}

inline bool is_acyclic(const CPNet& net) {
  return topological_order(net).has_value();
}

// ---------------------------------------------------------------------------
// Projection and table lookup.

// Values of `outcome` at the positions listed in `vars`, in that order.
// The order follows `vars`, not the net's variable order.
inline std::vector<ValueIndex> project(const Outcome& outcome,
                                       const std::vector<VarIndex>& vars) {
  std::vector<ValueIndex> selected;
  selected.reserve(vars.size());
  std::vector<bool> seen(outcome.size(), false);
  for (VarIndex v : vars) {
    if (v < 0 || static_cast<std::size_t>(v) >= outcome.size()) {
      throw std::invalid_argument("project: unknown variable index " +
                                  std::to_string(v));
    }
    if (seen[v]) {
      throw std::invalid_argument("project: variable index " +
                                  std::to_string(v) + " repeated");
    }
    seen[v] = true;
    selected.push_back(outcome[v]);
  }
  return selected;
}

// The row of x's table selected by the parent coordinates of `outcome`.
// Depends only on those coordinates; completeness guarantees the row exists.
inline const TotalOrder& lookup_order(const CPNet& net, VarIndex x,
                                      const Outcome& outcome) {
  const auto& table = net.tables[x];
  const std::uint64_t key =
      encode_mixed_radix(project(outcome, table.parents), net.parent_radices(x));
  return table.rows[key];
}

// ---------------------------------------------------------------------------
// Outcome encoding over the whole net (used by the search-based semantics).

inline std::uint64_t encode_outcome(const CPNet& net, const Outcome& outcome) {
  return encode_mixed_radix(outcome, net.domain_sizes());
}

inline Outcome decode_outcome(const CPNet& net, std::uint64_t key) {
  return decode_mixed_radix(key, net.domain_sizes());
}

// Number of outcomes; throws SizeLimitError above `cap`.
inline std::uint64_t outcome_count(const CPNet& net,
                                   std::uint64_t cap = kDefaultMaxOutcomes) {
  const auto count = checked_product(net.domain_sizes(), cap);
  if (!count) {
    throw SizeLimitError("outcome space exceeds the configured limit of " +
                         std::to_string(cap) + " outcomes");
  }
  return *count;
}

}  // namespace cpnets

#endif  // CPNETS_CORE_HPP_
