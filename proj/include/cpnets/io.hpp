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

#ifndef CPNETS_IO_HPP_
#define CPNETS_IO_HPP_

#include <charconv>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cpnets/core.hpp"
#include "cpnets/game.hpp"

namespace cpnets {

// Documents are line-oriented UTF-8: `#` starts a comment, whitespace within
// a line is insignificant, one net or game per file. Parsing never throws on
// malformed text; every problem comes back as a positioned error.

struct ParseError {
  int line;    // 1-based
  int column;  // 1-based
  std::string message;

  bool operator==(const ParseError&) const = default;
};

struct CPNetParse {
  std::optional<CPNet> net;
  std::vector<ParseError> errors;
  bool ok() const { return net.has_value() && errors.empty(); }
};

struct GameParse {
  std::optional<Game> game;
  std::vector<ParseError> errors;
  bool ok() const { return game.has_value() && errors.empty(); }
};

namespace detail {

inline bool ident_start(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || c == '_';
}
inline bool ident_char(char c) {
  return ident_start(c) || (c >= '0' && c <= '9');
}
inline bool number_char(char c) {
  return (c >= '0' && c <= '9') || c == '.' || c == '+' || c == '-' || c == 'e' ||
         c == 'E';
}

// A tiny cursor over one line; the caller reports errors with its position.
class LineLexer {
 public:
  LineLexer(std::string_view text, int line) : text_(text), line_(line) {}

  int line() const { return line_; }
  int column() const { return static_cast<int>(pos_) + 1; }

  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t')) {
      ++pos_;
    }
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  // Consumes `c` when it is next; returns whether it did.
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::optional<std::string_view> ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_])) return std::nullopt;
    const std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  std::optional<double> number() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < text_.size() && number_char(text_[pos_])) ++pos_;
    if (pos_ == start) return std::nullopt;
    double value = 0;
    const auto* first = text_.data() + start;
    const auto* last = text_.data() + pos_;
    const auto result = std::from_chars(first, last, value);
    if (result.ec != std::errc{} || result.ptr != last) {
      pos_ = start;
      return std::nullopt;
    }
    return value;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  int line_;
};

struct ErrorSink {
  std::vector<ParseError>* errors;
  void add(int line, int column, std::string message) {
    errors->push_back({line, column, std::move(message)});
  }
  void add(const LineLexer& lexer, std::string message) {
    add(lexer.line(), lexer.column(), std::move(message));
  }
};

// Splits into lines, stripping comments and trailing '\r'.
inline std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (const std::size_t hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    while (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

inline std::string join(const std::vector<std::string>& parts,
                        std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

// Comma-separated identifier list running to end of line.
inline std::optional<std::vector<std::string>> ident_list(LineLexer& lexer,
                                                          ErrorSink& sink,
                                                          bool allow_empty) {
  std::vector<std::string> items;
  if (lexer.at_end()) {
    if (allow_empty) return items;
    sink.add(lexer, "expected a name");
    return std::nullopt;
  }
  for (;;) {
    const auto item = lexer.ident();
    if (!item) {
      sink.add(lexer, "expected a name");
      return std::nullopt;
    }
    items.emplace_back(*item);
    if (!lexer.accept(',')) break;
  }
  if (!lexer.at_end()) {
    sink.add(lexer, "unexpected text after list");
    return std::nullopt;
  }
  return items;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// CP-net documents.
//
//   domain <Var> = <v1>, <v2> [, ...]
//   parents <Var> = [<P1> [, <P2> ...]]     (omitted or empty: independent)
//   cpt <Var>:
//     [<P1>=<val>, <P2>=<val>]: <v1> > <v2> [> ...]
//
// Independent variables write their single row bare (`: a > b`) or as `[]: ...`.
// Conditions may list the parents in any order; the serializer emits the
// canonical order.

inline CPNetParse parse_cpnet(std::string_view text,
                              std::uint64_t max_table_rows = kDefaultMaxTableRows) {
  CPNetParse result;
  detail::ErrorSink sink{&result.errors};
  CPNet net;

  std::vector<int> domain_lines;            // per variable
  std::vector<int> parents_lines;           // 0 = not declared
  std::vector<int> cpt_lines;               // 0 = no block
  std::vector<bool> parents_usable;         // false once the table is broken
  VarIndex current_cpt = -1;
  bool skip_block = false;

  const auto lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    detail::LineLexer lexer(lines[li], static_cast<int>(li) + 1);
    if (lexer.at_end()) continue;

    if (lexer.peek() == '[' || lexer.peek() == ':') {
      // A table row.
      if (current_cpt < 0) {
        if (!skip_block) sink.add(lexer, "row outside a cpt block");
        continue;
      }
      const VarIndex x = current_cpt;
      const auto& parents = net.tables[x].parents;
      std::vector<ValueIndex> parent_values(parents.size(), -1);
      if (lexer.accept('[')) {
        if (!lexer.accept(']')) {
          for (;;) {
            const int at = lexer.column();
            const auto pname = lexer.ident();
            if (!pname || !lexer.accept('=')) {
              sink.add(lexer.line(), at, "expected <Parent>=<value> in condition");
              goto next_line;
            }
            const VarIndex p = net.variable_index(*pname);
            int position = -1;
            for (std::size_t i = 0; i < parents.size(); ++i) {
              if (parents[i] == p) position = static_cast<int>(i);
            }
            if (p < 0 || position < 0) {
              sink.add(lexer.line(), at,
                       "'" + std::string(*pname) + "' is not a parent of '" +
                           net.variables[x].name + "'");
              goto next_line;
            }
            const auto vtoken = lexer.ident();
            if (!vtoken) {
              sink.add(lexer, "expected a value token");
              goto next_line;
            }
            const ValueIndex v = net.value_index(p, *vtoken);
            if (v < 0) {
              sink.add(lexer.line(), at,
                       "'" + std::string(*vtoken) + "' is not a value of '" +
                           std::string(*pname) + "'");
              goto next_line;
            }
            if (parent_values[position] >= 0) {
              sink.add(lexer.line(), at,
                       "parent '" + std::string(*pname) + "' repeated in condition");
              goto next_line;
            }
            parent_values[position] = v;
            if (lexer.accept(']')) break;
            if (!lexer.accept(',')) {
              sink.add(lexer, "expected ',' or ']' in condition");
              goto next_line;
            }
          }
        }
      }
      for (std::size_t i = 0; i < parent_values.size(); ++i) {
        if (parent_values[i] < 0) {
          sink.add(lexer, "condition misses parent '" +
                              net.variables[parents[i]].name + "'");
          goto next_line;
        }
      }
      if (!lexer.accept(':')) {
        sink.add(lexer, "expected ':' before the ranking");
        continue;
      }
      {
        TotalOrder order;
        std::vector<bool> used(net.domain_size(x), false);
        for (;;) {
          const int at = lexer.column();
          const auto token = lexer.ident();
          if (!token) {
            sink.add(lexer, "expected a value token in the ranking");
            goto next_line;
          }
          const ValueIndex v = net.value_index(x, *token);
          if (v < 0) {
            sink.add(lexer.line(), at,
                     "'" + std::string(*token) + "' is not a value of '" +
                         net.variables[x].name + "'");
            goto next_line;
          }
          if (used[v]) {
            sink.add(lexer.line(), at,
                     "'" + std::string(*token) + "' repeated in the ranking");
            goto next_line;
          }
          used[v] = true;
          order.ranking.push_back(v);
          if (lexer.at_end()) break;
          if (!lexer.accept('>')) {
            sink.add(lexer, "expected '>' between ranked values");
            goto next_line;
          }
        }
        if (order.ranking.size() !=
            static_cast<std::size_t>(net.domain_size(x))) {
          sink.add(lexer.line(), 1, "ranking must list every value of '" +
                                        net.variables[x].name + "'");
          continue;
        }
        if (!parents_usable[x]) continue;  // table slots unavailable
        const std::uint64_t key = net.row_key(x, parent_values);
        if (!net.tables[x].rows[key].empty()) {
          sink.add(lexer.line(), 1, "duplicate row for this parent assignment");
          continue;
        }
        net.set_row_by_key(x, key, std::move(order));
      }
      continue;
    }

    {
      const auto keyword = lexer.ident();
      if (!keyword) {
        sink.add(lexer, "expected 'domain', 'parents', 'cpt', or a row");
        continue;
      }
      if (*keyword == "domain") {
        current_cpt = -1;
        skip_block = false;
        const auto name = lexer.ident();
        if (!name || !lexer.accept('=')) {
          sink.add(lexer, "expected 'domain <Var> = <values>'");
          continue;
        }
        const auto values = detail::ident_list(lexer, sink, false);
        if (!values) continue;
        if (net.variable_index(*name) >= 0) {
          sink.add(lexer.line(), 1,
                   "variable '" + std::string(*name) + "' already declared");
          continue;
        }
        bool dup = false;
        for (std::size_t i = 0; i < values->size() && !dup; ++i) {
          for (std::size_t j = 0; j < i; ++j) {
            if ((*values)[i] == (*values)[j]) {
              sink.add(lexer.line(), 1, "value token '" + (*values)[i] +
                                            "' repeated in domain");
              dup = true;
              break;
            }
          }
        }
        if (dup) continue;
        net.add_variable(std::string(*name), *values);
        domain_lines.push_back(lexer.line());
        parents_lines.push_back(0);
        cpt_lines.push_back(0);
        parents_usable.push_back(true);
      } else if (*keyword == "parents") {
        current_cpt = -1;
        skip_block = false;
        const auto name = lexer.ident();
        if (!name || !lexer.accept('=')) {
          sink.add(lexer, "expected 'parents <Var> = <list>'");
          continue;
        }
        const VarIndex x = net.variable_index(*name);
        if (x < 0) {
          sink.add(lexer.line(), 1,
                   "unknown variable '" + std::string(*name) + "'");
          continue;
        }
        if (parents_lines[x] != 0) {
          sink.add(lexer.line(), 1, "parents of '" + std::string(*name) +
                                        "' already declared");
          continue;
        }
        if (cpt_lines[x] != 0) {
          sink.add(lexer.line(), 1, "parents of '" + std::string(*name) +
                                        "' must precede its cpt block");
          continue;
        }
        const auto names = detail::ident_list(lexer, sink, true);
        if (!names) continue;
        std::vector<VarIndex> parents;
        bool bad = false;
        for (const std::string& pname : *names) {
          const VarIndex p = net.variable_index(pname);
          if (p < 0) {
            sink.add(lexer.line(), 1, "unknown variable '" + pname + "'");
            bad = true;
          } else if (p == x) {
            sink.add(lexer.line(), 1,
                     "'" + pname + "' cannot be its own parent");
            bad = true;
          } else {
            for (VarIndex q : parents) {
              if (q == p) {
                sink.add(lexer.line(), 1, "parent '" + pname + "' repeated");
                bad = true;
              }
            }
            parents.push_back(p);
          }
        }
        parents_lines[x] = lexer.line();
        if (bad) {
          parents_usable[x] = false;
          continue;
        }
        std::vector<int> radices;
        for (VarIndex p : parents) radices.push_back(net.domain_size(p));
        if (!checked_product(radices, max_table_rows)) {
          sink.add(lexer.line(), 1,
                   "parent-domain product for '" + std::string(*name) +
                       "' exceeds the limit of " +
                       std::to_string(max_table_rows) + " rows");
          parents_usable[x] = false;
          continue;
        }
        net.set_parents(x, std::move(parents));
      } else if (*keyword == "cpt") {
        const auto name = lexer.ident();
        if (!name || !lexer.accept(':') || !lexer.at_end()) {
          sink.add(lexer, "expected 'cpt <Var>:'");
          current_cpt = -1;
          skip_block = true;
          continue;
        }
        const VarIndex x = net.variable_index(*name);
        if (x < 0) {
          sink.add(lexer.line(), 1,
                   "unknown variable '" + std::string(*name) + "'");
          current_cpt = -1;
          skip_block = true;
          continue;
        }
        if (cpt_lines[x] != 0) {
          sink.add(lexer.line(), 1,
                   "cpt block for '" + std::string(*name) + "' already given");
          current_cpt = -1;
          skip_block = true;
          continue;
        }
        cpt_lines[x] = lexer.line();
        current_cpt = x;
        skip_block = false;
      } else {
        sink.add(lexer.line(), 1,
                 "unknown directive '" + std::string(*keyword) + "'");
        current_cpt = -1;
        skip_block = true;
      }
    }
  next_line:;
  }

  if (net.variable_count() == 0) {
    if (result.errors.empty()) sink.add(1, 1, "no variables declared");
    return result;
  }

  // Anything the line-by-line pass could not see (chiefly missing rows) is
  // picked up by structural validation and mapped to the best-known position.
  const ValidationReport report = validate(net, max_table_rows);
  for (const Violation& violation : report.violations) {
    const VarIndex x = violation.variable;
    int line = 1;
    if (x >= 0 && x < net.variable_count()) {
      if (violation.kind == ViolationKind::kMissingRow) {
        line = cpt_lines[x] != 0 ? cpt_lines[x] : domain_lines[x];
      } else if (violation.kind == ViolationKind::kBadParent ||
                 violation.kind == ViolationKind::kTableTooLarge) {
        line = parents_lines[x] != 0 ? parents_lines[x] : domain_lines[x];
      } else {
        line = domain_lines[x];
      }
    }
    sink.add(line, 1,
             std::string(to_string(violation.kind)) + " for variable '" +
                 net.variables[x].name + "': " + violation.detail);
  }

  if (result.errors.empty()) result.net = std::move(net);
  return result;
}

// Canonical form: domains in variable order, parents lines for dependent
// variables only, cpt rows in mixed-radix key order. Identical nets always
// serialize to identical bytes.
inline std::string serialize_cpnet(const CPNet& net) {
  std::string out;
  for (const Variable& var : net.variables) {
    out += "domain " + var.name + " = " + detail::join(var.domain, ", ") + "\n";
  }
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    if (net.tables[x].parents.empty()) continue;
    std::vector<std::string> names;
    for (VarIndex p : net.tables[x].parents) names.push_back(net.variables[p].name);
    out += "parents " + net.variables[x].name + " = " +
           detail::join(names, ", ") + "\n";
  }
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    const auto& table = net.tables[x];
    out += "cpt " + net.variables[x].name + ":\n";
    const auto radices = net.parent_radices(x);
    for (std::uint64_t key = 0; key < table.rows.size(); ++key) {
      out += "  ";
      if (!table.parents.empty()) {
        const auto values = decode_mixed_radix(key, radices);
        std::vector<std::string> parts;
        for (std::size_t i = 0; i < table.parents.size(); ++i) {
          parts.push_back(net.variables[table.parents[i]].name + "=" +
                          net.variables[table.parents[i]].domain[values[i]]);
        }
        out += "[" + detail::join(parts, ", ") + "]";
      }
      out += ": ";
      std::vector<std::string> ranked;
      for (ValueIndex v : table.rows[key].ranking) {
        ranked.push_back(net.variables[x].domain[v]);
      }
      out += detail::join(ranked, " > ") + "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Game documents.
//
//   player <Name> = <s1>, <s2> [, ...]
//   prefs <Player> | <Opp>=<s>, ... : <s1> > <s2> [> ...]
// or a payoff matrix (converted to orders per opponent profile, ties refused):
//   payoffs:
//     (<s1>, ..., <sn>) = <u1>, ..., <un>

namespace detail {

inline std::string opponent_profile_label(const Game& game, PlayerIndex i,
                                          std::uint64_t key) {
  const auto radices = game.opponent_radices(i);
  const auto values = decode_mixed_radix(key, radices);
  std::vector<std::string> parts;
  std::size_t at = 0;
  for (PlayerIndex j = 0; j < game.player_count(); ++j) {
    if (j == i) continue;
    parts.push_back(game.players[j].name + "=" +
                    game.players[j].strategies[values[at++]]);
  }
  return parts.empty() ? "()" : join(parts, ", ");
}

}  // namespace detail

inline GameParse parse_game(std::string_view text) {
  GameParse result;
  detail::ErrorSink sink{&result.errors};
  Game game;

  constexpr std::uint64_t kHardProfileCap = std::uint64_t{1} << 22;
  std::vector<int> player_lines;
  std::vector<std::vector<int>> pref_lines;  // per player, per profile key
  bool preferences_started = false;
  bool payoff_mode = false;
  int payoff_header_line = 0;
  std::vector<std::optional<std::vector<double>>> payoff_rows;
  std::vector<int> joint_radices;

  auto freeze_players = [&](const detail::LineLexer& lexer) -> bool {
    if (preferences_started) return true;
    if (game.players.empty()) {
      sink.add(lexer.line(), 1, "no players declared yet");
      return false;
    }
    for (PlayerIndex i = 0; i < game.player_count(); ++i) {
      const auto profiles =
          checked_product(game.opponent_radices(i), kHardProfileCap);
      if (!profiles) {
        sink.add(lexer.line(), 1, "opponent profile space too large");
        return false;
      }
      game.preferences.emplace_back(*profiles);
      pref_lines.emplace_back(*profiles, 0);
    }
    preferences_started = true;
    return true;
  };

  const auto lines = detail::split_lines(text);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    detail::LineLexer lexer(lines[li], static_cast<int>(li) + 1);
    if (lexer.at_end()) continue;

    if (payoff_mode && lexer.peek() == '(') {
      lexer.accept('(');
      JointStrategy joint;
      bool bad = false;
      for (PlayerIndex i = 0; i < game.player_count(); ++i) {
        const int at = lexer.column();
        const auto token = lexer.ident();
        if (!token) {
          sink.add(lexer, "expected a strategy token");
          bad = true;
          break;
        }
        const ValueIndex s = game.strategy_index(i, *token);
        if (s < 0) {
          sink.add(lexer.line(), at,
                   "'" + std::string(*token) + "' is not a strategy of '" +
                       game.players[i].name + "'");
          bad = true;
          break;
        }
        joint.push_back(s);
        const bool last = i + 1 == game.player_count();
        if (!lexer.accept(last ? ')' : ',')) {
          sink.add(lexer, last ? "expected ')'" : "expected ','");
          bad = true;
          break;
        }
      }
      if (bad) continue;
      if (!lexer.accept('=')) {
        sink.add(lexer, "expected '=' after the joint strategy");
        continue;
      }
      std::vector<double> payoffs;
      for (PlayerIndex i = 0; i < game.player_count(); ++i) {
        const auto value = lexer.number();
        if (!value) {
          sink.add(lexer, "expected a payoff number");
          break;
        }
        payoffs.push_back(*value);
        if (i + 1 < game.player_count() && !lexer.accept(',')) {
          sink.add(lexer, "expected ','");
          break;
        }
      }
      if (payoffs.size() != static_cast<std::size_t>(game.player_count())) continue;
      if (!lexer.at_end()) {
        sink.add(lexer, "unexpected text after payoffs");
        continue;
      }
      const std::uint64_t key = encode_mixed_radix(joint, joint_radices);
      if (payoff_rows[key]) {
        sink.add(lexer.line(), 1, "duplicate payoff row for this joint strategy");
        continue;
      }
      payoff_rows[key] = std::move(payoffs);
      continue;
    }

    const auto keyword = lexer.ident();
    if (!keyword) {
      sink.add(lexer, "expected 'player', 'prefs', 'payoffs:', or a payoff row");
      continue;
    }
    if (*keyword == "player") {
      if (preferences_started) {
        sink.add(lexer.line(), 1, "players must be declared before preferences");
        continue;
      }
      const auto name = lexer.ident();
      if (!name || !lexer.accept('=')) {
        sink.add(lexer, "expected 'player <Name> = <strategies>'");
        continue;
      }
      if (game.player_index(*name) >= 0) {
        sink.add(lexer.line(), 1,
                 "player '" + std::string(*name) + "' already declared");
        continue;
      }
      const auto strategies = detail::ident_list(lexer, sink, false);
      if (!strategies) continue;
      bool dup = false;
      for (std::size_t i = 0; i < strategies->size() && !dup; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          if ((*strategies)[i] == (*strategies)[j]) {
            sink.add(lexer.line(), 1,
                     "strategy '" + (*strategies)[i] + "' repeated");
            dup = true;
            break;
          }
        }
      }
      if (dup) continue;
      game.players.push_back({std::string(*name), *strategies});
      player_lines.push_back(lexer.line());
    } else if (*keyword == "prefs") {
      if (payoff_mode) {
        sink.add(lexer.line(), 1,
                 "cannot mix 'prefs' lines with a payoff matrix");
        continue;
      }
      if (!freeze_players(lexer)) continue;
      const auto name = lexer.ident();
      if (!name || !lexer.accept('|')) {
        sink.add(lexer, "expected 'prefs <Player> | <conditions> : <ranking>'");
        continue;
      }
      const PlayerIndex i = game.player_index(*name);
      if (i < 0) {
        sink.add(lexer.line(), 1, "unknown player '" + std::string(*name) + "'");
        continue;
      }
      std::vector<ValueIndex> opponents(game.player_count() - 1, -1);
      bool bad = false;
      while (lexer.peek() != ':' && !lexer.at_end()) {
        const int at = lexer.column();
        const auto pname = lexer.ident();
        if (!pname || !lexer.accept('=')) {
          sink.add(lexer.line(), at, "expected <Player>=<strategy> condition");
          bad = true;
          break;
        }
        const PlayerIndex j = game.player_index(*pname);
        if (j < 0 || j == i) {
          sink.add(lexer.line(), at,
                   "'" + std::string(*pname) + "' is not an opponent of '" +
                       std::string(*name) + "'");
          bad = true;
          break;
        }
        const auto token = lexer.ident();
        const ValueIndex s = token ? game.strategy_index(j, *token) : -1;
        if (s < 0) {
          sink.add(lexer.line(), at, "expected a strategy of '" +
                                         std::string(*pname) + "'");
          bad = true;
          break;
        }
        const std::size_t position = j < i ? j : j - 1;
        if (opponents[position] >= 0) {
          sink.add(lexer.line(), at,
                   "opponent '" + std::string(*pname) + "' repeated");
          bad = true;
          break;
        }
        opponents[position] = s;
        if (lexer.peek() == ',') lexer.accept(',');
      }
      if (bad) continue;
      for (std::size_t k = 0; k < opponents.size(); ++k) {
        if (opponents[k] < 0) {
          const PlayerIndex j =
              static_cast<PlayerIndex>(k) < i ? static_cast<PlayerIndex>(k)
                                              : static_cast<PlayerIndex>(k) + 1;
          sink.add(lexer.line(), 1, "condition misses opponent '" +
                                        game.players[j].name + "'");
          bad = true;
        }
      }
      if (bad || !lexer.accept(':')) {
        if (!bad) sink.add(lexer, "expected ':' before the ranking");
        continue;
      }
      TotalOrder order;
      std::vector<bool> used(game.strategy_count(i), false);
      for (;;) {
        const int at = lexer.column();
        const auto token = lexer.ident();
        const ValueIndex s = token ? game.strategy_index(i, *token) : -1;
        if (s < 0) {
          sink.add(lexer.line(), at, "expected a strategy of '" +
                                         std::string(*name) + "'");
          bad = true;
          break;
        }
        if (used[s]) {
          sink.add(lexer.line(), at,
                   "'" + std::string(*token) + "' repeated in the ranking");
          bad = true;
          break;
        }
        used[s] = true;
        order.ranking.push_back(s);
        if (lexer.at_end()) break;
        if (!lexer.accept('>')) {
          sink.add(lexer, "expected '>' between ranked strategies");
          bad = true;
          break;
        }
      }
      if (bad) continue;
      if (order.ranking.size() != static_cast<std::size_t>(game.strategy_count(i))) {
        sink.add(lexer.line(), 1, "ranking must list every strategy of '" +
                                      std::string(*name) + "'");
        continue;
      }
      const std::uint64_t key =
          encode_mixed_radix(opponents, game.opponent_radices(i));
      if (pref_lines[i][key] != 0) {
        sink.add(lexer.line(), 1, "duplicate preferences for this profile");
        continue;
      }
      pref_lines[i][key] = lexer.line();
      game.preferences[i][key] = std::move(order);
    } else if (*keyword == "payoffs") {
      if (!lexer.accept(':') || !lexer.at_end()) {
        sink.add(lexer, "expected 'payoffs:'");
        continue;
      }
      if (preferences_started) {
        sink.add(lexer.line(), 1,
                 "cannot mix a payoff matrix with 'prefs' lines");
        continue;
      }
      if (payoff_mode) {
        sink.add(lexer.line(), 1, "payoff matrix already given");
        continue;
      }
      if (!freeze_players(lexer)) continue;
      payoff_mode = true;
      payoff_header_line = lexer.line();
      joint_radices = game.strategy_counts();
      const auto count = checked_product(joint_radices, kHardProfileCap);
      if (!count) {
        sink.add(lexer.line(), 1, "joint-strategy space too large");
        return result;
      }
      payoff_rows.assign(*count, std::nullopt);
    } else {
      sink.add(lexer.line(), 1,
               "unknown directive '" + std::string(*keyword) + "'");
    }
  }

  if (game.players.empty()) {
    if (result.errors.empty()) sink.add(1, 1, "no players declared");
    return result;
  }
  if (!preferences_started) {
    sink.add(static_cast<int>(lines.size()), 1,
             "no preferences or payoff matrix given");
    return result;
  }

  if (payoff_mode) {
    bool complete = true;
    for (std::uint64_t key = 0; key < payoff_rows.size(); ++key) {
      if (!payoff_rows[key]) {
        std::vector<std::string> parts;
        const auto joint = decode_mixed_radix(key, joint_radices);
        for (PlayerIndex i = 0; i < game.player_count(); ++i) {
          parts.push_back(game.players[i].strategies[joint[i]]);
        }
        sink.add(payoff_header_line, 1,
                 "missing payoffs for (" + detail::join(parts, ", ") + ")");
        complete = false;
      }
    }
    if (!complete) return result;
    // Per player and opponent profile, rank own strategies by payoff.
    for (PlayerIndex i = 0; i < game.player_count(); ++i) {
      const auto opponent_radices = game.opponent_radices(i);
      for (std::uint64_t key = 0; key < game.opponent_profile_count(i); ++key) {
        const auto opponents = decode_mixed_radix(key, opponent_radices);
        std::vector<std::pair<double, ValueIndex>> slice;
        for (ValueIndex v = 0; v < game.strategy_count(i); ++v) {
          JointStrategy joint = opponents;
          joint.insert(joint.begin() + i, v);
          slice.push_back({(*payoff_rows[encode_mixed_radix(joint, joint_radices)])[i], v});
        }
        std::sort(slice.begin(), slice.end(), [](const auto& a, const auto& b) {
          return a.first != b.first ? a.first > b.first : a.second < b.second;
        });
        bool tied = false;
        for (std::size_t k = 0; k + 1 < slice.size(); ++k) {
          if (slice[k].first == slice[k + 1].first) {
            sink.add(payoff_header_line, 1,
                     "tied payoffs for player '" + game.players[i].name +
                         "' between '" +
                         game.players[i].strategies[slice[k].second] +
                         "' and '" +
                         game.players[i].strategies[slice[k + 1].second] +
                         "' at profile " +
                         detail::opponent_profile_label(game, i, key));
            tied = true;
          }
        }
        if (tied) continue;
        TotalOrder order;
        for (const auto& [payoff, v] : slice) order.ranking.push_back(v);
        game.preferences[i][key] = std::move(order);
      }
    }
  }

  for (PlayerIndex i = 0; i < game.player_count(); ++i) {
    for (std::uint64_t key = 0; key < game.opponent_profile_count(i); ++key) {
      if (game.preferences[i][key].empty()) {
        sink.add(player_lines[i], 1,
                 "missing preferences for player '" + game.players[i].name +
                     "' at profile " +
                     detail::opponent_profile_label(game, i, key));
      }
    }
  }

  if (result.errors.empty()) result.game = std::move(game);
  return result;
}

// Canonical form: player lines in order, then explicit prefs lines per player
// in profile-key order. Payoff matrices are an import convenience only.
inline std::string serialize_game(const Game& game) {
  std::string out;
  for (const GamePlayer& player : game.players) {
    out += "player " + player.name + " = " +
           detail::join(player.strategies, ", ") + "\n";
  }
  for (PlayerIndex i = 0; i < game.player_count(); ++i) {
    const auto radices = game.opponent_radices(i);
    for (std::uint64_t key = 0; key < game.opponent_profile_count(i); ++key) {
      const auto values = decode_mixed_radix(key, radices);
      std::vector<std::string> parts;
      std::size_t at = 0;
      for (PlayerIndex j = 0; j < game.player_count(); ++j) {
        if (j == i) continue;
        parts.push_back(game.players[j].name + "=" +
                        game.players[j].strategies[values[at++]]);
      }
      std::vector<std::string> ranked;
      for (ValueIndex v : game.preferences[i][key].ranking) {
        ranked.push_back(game.players[i].strategies[v]);
      }
      out += "prefs " + game.players[i].name + " | " +
             detail::join(parts, ", ") + ": " + detail::join(ranked, " > ") +
             "\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Outcome text helpers (CLI surface).

inline std::vector<std::string> outcome_tokens(const CPNet& net,
                                               const Outcome& outcome) {
  std::vector<std::string> tokens;
  tokens.reserve(outcome.size());
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    tokens.push_back(net.variables[x].domain[outcome[x]]);
  }
  return tokens;
}

inline std::string format_outcome(const CPNet& net, const Outcome& outcome) {
  return detail::join(outcome_tokens(net, outcome), " ");
}

struct OutcomeParse {
  std::optional<Outcome> outcome;
  std::string error;
};

// `A=a B=b` or `A=a,B=b`: order-insensitive, every variable exactly once.
inline OutcomeParse parse_outcome_spec(const CPNet& net, std::string_view text) {
  Outcome outcome(net.variable_count(), -1);
  std::size_t pos = 0;
  auto fail = [](std::string message) {
    return OutcomeParse{std::nullopt, std::move(message)};
  };
  while (pos < text.size()) {
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t' || text[pos] == ',')) {
      ++pos;
    }
    if (pos >= text.size()) break;
    std::size_t end = pos;
    while (end < text.size() && text[end] != ' ' && text[end] != '\t' &&
           text[end] != ',') {
      ++end;
    }
    const std::string_view pair = text.substr(pos, end - pos);
    pos = end;
    const std::size_t eq = pair.find('=');
    if (eq == std::string_view::npos) {
      return fail("expected <Var>=<value>, got '" + std::string(pair) + "'");
    }
    const std::string_view name = pair.substr(0, eq);
    const std::string_view token = pair.substr(eq + 1);
    const VarIndex x = net.variable_index(name);
    if (x < 0) return fail("unknown variable '" + std::string(name) + "'");
    const ValueIndex v = net.value_index(x, token);
    if (v < 0) {
      return fail("'" + std::string(token) + "' is not a value of '" +
                  std::string(name) + "'");
    }
    if (outcome[x] >= 0) {
      return fail("variable '" + std::string(name) + "' assigned twice");
    }
    outcome[x] = v;
  }
  for (VarIndex x = 0; x < net.variable_count(); ++x) {
    if (outcome[x] < 0) {
      return fail("variable '" + net.variables[x].name + "' not assigned");
    }
  }
  return {std::move(outcome), ""};
}

// ---------------------------------------------------------------------------
// Seeded random instances. mt19937_64 plus hand-rolled rejection sampling and
// Fisher-Yates keep the output identical across standard libraries, so a seed
// pins the document bytes.

namespace detail {

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

inline int uniform_int(std::mt19937_64& rng, int lo, int hi) {  // inclusive
  return lo + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

inline TotalOrder random_order(std::mt19937_64& rng, int size) {
  TotalOrder order;
  order.ranking.resize(size);
  for (int i = 0; i < size; ++i) order.ranking[i] = i;
  for (int i = size - 1; i > 0; --i) {
    std::swap(order.ranking[i], order.ranking[uniform_int(rng, 0, i)]);
  }
  return order;
}

}  // namespace detail

struct NetGenOptions {
  int variables = 3;
  int domain_size = 2;
  // When positive, each domain size is drawn uniformly from
  // [min_domain_size, domain_size] instead of being exact.
  int min_domain_size = 0;
  bool acyclic = false;
  int max_parents = 2;
};

inline CPNet random_cpnet(const NetGenOptions& options, std::uint64_t seed) {
  if (options.variables < 1 || options.domain_size < 1) {
    throw std::invalid_argument("random_cpnet: need at least one variable and value");
  }
  std::mt19937_64 rng(seed);
  CPNet net;
  for (int x = 0; x < options.variables; ++x) {
    const int size = options.min_domain_size > 0
                         ? detail::uniform_int(rng, options.min_domain_size,
                                               options.domain_size)
                         : options.domain_size;
    std::vector<std::string> domain;
    for (int v = 0; v < size; ++v) domain.push_back("v" + std::to_string(v + 1));
    net.add_variable("X" + std::to_string(x + 1), std::move(domain));
  }
  for (VarIndex x = 0; x < options.variables; ++x) {
    std::vector<VarIndex> candidates;
    for (VarIndex p = 0; p < options.variables; ++p) {
      if (options.acyclic ? p < x : p != x) candidates.push_back(p);
    }
    const int available = static_cast<int>(candidates.size());
    const int count = available == 0
                          ? 0
                          : detail::uniform_int(rng, 0,
                                                std::min(options.max_parents,
                                                         available));
    for (int i = 0; i < count; ++i) {
      const int j = detail::uniform_int(rng, i, available - 1);
      std::swap(candidates[i], candidates[j]);
    }
    candidates.resize(count);
    net.set_parents(x, candidates);
    const std::uint64_t rows = net.row_count(x);
    for (std::uint64_t key = 0; key < rows; ++key) {
      net.set_row_by_key(x, key, detail::random_order(rng, net.domain_size(x)));
    }
  }
  return net;
}

struct GameGenOptions {
  int players = 2;
  int min_strategies = 2;
  int max_strategies = 3;
};

inline Game random_game(const GameGenOptions& options, std::uint64_t seed) {
  if (options.players < 1 || options.min_strategies < 1 ||
      options.max_strategies < options.min_strategies) {
    throw std::invalid_argument("random_game: bad generator options");
  }
  std::mt19937_64 rng(seed);
  Game game;
  for (int i = 0; i < options.players; ++i) {
    const int size =
        detail::uniform_int(rng, options.min_strategies, options.max_strategies);
    std::vector<std::string> strategies;
    for (int v = 0; v < size; ++v) strategies.push_back("s" + std::to_string(v + 1));
    game.players.push_back({"P" + std::to_string(i + 1), std::move(strategies)});
  }
  for (PlayerIndex i = 0; i < game.player_count(); ++i) {
    const auto profiles =
        checked_product(game.opponent_radices(i), std::uint64_t{1} << 22);
    std::vector<TotalOrder> orders;
    for (std::uint64_t key = 0; key < *profiles; ++key) {
      orders.push_back(detail::random_order(rng, game.strategy_count(i)));
    }
    game.preferences.push_back(std::move(orders));
  }
  return game;
}

// ---------------------------------------------------------------------------

inline std::optional<std::string> read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace cpnets

#endif  // CPNETS_IO_HPP_
