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

#ifndef CPNETS_CLI_HPP_
#define CPNETS_CLI_HPP_

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cpnets/core.hpp"
#include "cpnets/elimination.hpp"
#include "cpnets/game.hpp"
#include "cpnets/io.hpp"
#include "cpnets/reduction.hpp"
#include "cpnets/semantics.hpp"

namespace cpnets {

// Exit codes: 0 success, 1 negative query answer, 2 invalid input,
// 3 size limit exceeded. Results go to stdout, diagnostics to stderr.
inline constexpr int kExitOk = 0;
inline constexpr int kExitNegative = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitSizeLimit = 3;

namespace detail {

inline std::optional<CPNet> load_net(const std::string& path) {
  const auto text = read_text_file(path);
  if (!text) {
    std::cerr << "cpnet: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  auto parsed = parse_cpnet(*text);
  if (!parsed.ok()) {
    for (const ParseError& error : parsed.errors) {
      std::cerr << path << ":" << error.line << ":" << error.column << ": "
                << error.message << "\n";
    }
    return std::nullopt;
  }
  return std::move(parsed.net);
}

inline std::optional<Game> load_game(const std::string& path) {
  const auto text = read_text_file(path);
  if (!text) {
    std::cerr << "cpnet: cannot read '" << path << "'\n";
    return std::nullopt;
  }
  auto parsed = parse_game(*text);
  if (!parsed.ok()) {
    for (const ParseError& error : parsed.errors) {
      std::cerr << path << ":" << error.line << ":" << error.column << ": "
                << error.message << "\n";
    }
    return std::nullopt;
  }
  return std::move(parsed.game);
}

inline std::optional<Outcome> load_outcome(const CPNet& net,
                                           const std::string& spec) {
  auto parsed = parse_outcome_spec(net, spec);
  if (!parsed.outcome) {
    std::cerr << "cpnet: " << parsed.error << "\n";
    return std::nullopt;
  }
  return std::move(parsed.outcome);
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Exact engine for CP-nets and strategic games with parametrized preferences"};
  app.name("cpnet");
  app.require_subcommand(1);

  std::uint64_t max_outcomes = kDefaultMaxOutcomes;
  app.add_option("--max-outcomes", max_outcomes,
                 "ceiling for outcome/joint-strategy enumeration")
      ->envname("CPNET_MAX_OUTCOMES");

  std::string file;
  std::string outcome_spec_a, outcome_spec_b;
  std::string method = "auto";
  std::string kind_name;
  std::string direction;
  bool with_trace = false;
  int gen_vars = 0, gen_domain = 0, gen_max_parents = 2;
  bool gen_acyclic = false;
  std::uint64_t gen_seed = 0;

  auto* validate_cmd =
      app.add_subcommand("validate", "check a CP-net file, report violations");
  validate_cmd->add_option("file", file, "CP-net file")->required();

  auto* solve_cmd = app.add_subcommand("solve", "print the optimal outcomes");
  solve_cmd->add_option("file", file, "CP-net file")->required();
  solve_cmd->add_option("--method", method, "oracle|acyclic|eliminate")
      ->check(CLI::IsMember({"auto", "oracle", "acyclic", "eliminate"}));

  auto* reduce_cmd =
      app.add_subcommand("reduce", "drop redundant parents, print the reduced net");
  reduce_cmd->add_option("file", file, "CP-net file")->required();

  auto* eliminate_cmd = app.add_subcommand(
      "eliminate", "iterated elimination of suboptimal values");
  eliminate_cmd->add_option("file", file, "CP-net file")->required();
  eliminate_cmd->add_option("--kind", kind_name, "nbr|dominated")
      ->required()
      ->check(CLI::IsMember({"nbr", "dominated"}));
  eliminate_cmd->add_flag("--trace", with_trace, "print one line per removal");

  auto* to_game_cmd =
      app.add_subcommand("to-game", "translate a CP-net to a game");
  to_game_cmd->add_option("file", file, "CP-net file")->required();

  auto* to_cpnet_cmd =
      app.add_subcommand("to-cpnet", "translate a game to a CP-net");
  to_cpnet_cmd->add_option("file", file, "game file")->required();

  auto* better_cmd = app.add_subcommand(
      "better", "search a worsening-flip chain from one outcome to another");
  better_cmd->add_option("file", file, "CP-net file")->required();
  better_cmd->add_option("outcome1", outcome_spec_a, "e.g. \"A=a,B=b\"")->required();
  better_cmd->add_option("outcome2", outcome_spec_b, "e.g. \"A=a,B=bbar\"")->required();

  auto* flips_cmd = app.add_subcommand("flips", "one-flip neighbors of an outcome");
  flips_cmd->add_option("file", file, "CP-net file")->required();
  flips_cmd->add_option("outcome", outcome_spec_a, "e.g. \"A=a,B=b\"")->required();
  flips_cmd->add_option("--dir", direction, "up (improving) | down (worsening)")
      ->required()
      ->check(CLI::IsMember({"up", "down"}));

  auto* gen_cmd = app.add_subcommand("gen", "emit a seeded random CP-net");
  gen_cmd->add_option("--vars", gen_vars, "number of variables")->required();
  gen_cmd->add_option("--domain", gen_domain, "values per domain")->required();
  gen_cmd->add_flag("--acyclic", gen_acyclic, "sample an acyclic net");
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("--max-parents", gen_max_parents, "parent set cap");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    return app.exit(help) == 0 ? kExitOk : kExitInvalid;
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitInvalid;
  }

  try {
    if (*validate_cmd) {
      return detail::load_net(file) ? kExitOk : kExitInvalid;
    }

    if (*solve_cmd) {
      const auto net = detail::load_net(file);
      if (!net) return kExitInvalid;
      if (method == "acyclic" && !is_acyclic(*net)) {
        std::cerr << "cpnet: the dependency graph is cyclic\n";
        return kExitInvalid;
      }
      if (method == "acyclic" || (method == "auto" && is_acyclic(*net))) {
        std::cout << format_outcome(*net, solve_acyclic(*net)) << "\n";
        return kExitOk;
      }
      std::vector<std::string> lines;
      if (method == "oracle") {
        for (const Outcome& o : optimal_outcomes(*net, max_outcomes)) {
          lines.push_back(format_outcome(*net, o));
        }
      } else {  // eliminate, or auto on a cyclic net
        const EliminationTrace trace =
            eliminate(*net, EliminationKind::kNeverBestResponse);
        if (const auto single = unique_outcome(trace.final)) {
          lines.push_back(format_outcome(trace.final, *single));
        } else {
          for (const Outcome& o : optimal_outcomes(trace.final, max_outcomes)) {
            lines.push_back(format_outcome(trace.final, o));
          }
        }
      }
      for (const std::string& line : lines) std::cout << line << "\n";
      if (lines.empty()) std::cerr << "cpnet: no optimal outcome\n";
      return kExitOk;
    }

    if (*reduce_cmd) {
      const auto net = detail::load_net(file);
      if (!net) return kExitInvalid;
      std::cout << serialize_cpnet(reduce(*net));
      return kExitOk;
    }

    if (*eliminate_cmd) {
      const auto net = detail::load_net(file);
      if (!net) return kExitInvalid;
      const EliminationKind kind = kind_name == "nbr"
                                       ? EliminationKind::kNeverBestResponse
                                       : EliminationKind::kStrictlyDominated;
      const EliminationTrace trace = eliminate(*net, kind);
      if (with_trace) {
        for (const EliminationStep& step : trace.steps) {
          std::cout << "- " << step.variable_name << "=" << step.removed_token
                    << " (" << to_string(step.kind) << ")\n";
        }
      }
      std::cout << serialize_cpnet(trace.final);
      return kExitOk;
    }

    if (*to_game_cmd) {
      const auto net = detail::load_net(file);
      if (!net) return kExitInvalid;
      std::cout << serialize_game(cpnet_to_game(*net));
      return kExitOk;
    }

    if (*to_cpnet_cmd) {
      const auto game = detail::load_game(file);
      if (!game) return kExitInvalid;
      std::cout << serialize_cpnet(game_to_cpnet(*game));
      return kExitOk;
    }

    if (*better_cmd) {
      const auto net = detail::load_net(file);
      if (!net) return kExitInvalid;
      const auto from = detail::load_outcome(*net, outcome_spec_a);
      const auto to = detail::load_outcome(*net, outcome_spec_b);
      if (!from || !to) return kExitInvalid;
      const auto witness = better(*net, *from, *to, max_outcomes);
      if (!witness) {
        std::cerr << "cpnet: no worsening-flip chain found\n";
        return kExitNegative;
      }
      for (const Outcome& o : witness->chain) {
        std::cout << format_outcome(*net, o) << "\n";
      }
      return kExitOk;
    }

    if (*flips_cmd) {
      const auto net = detail::load_net(file);
      if (!net) return kExitInvalid;
      const auto outcome = detail::load_outcome(*net, outcome_spec_a);
      if (!outcome) return kExitInvalid;
      const FlipList list = direction == "up" ? improving_flips(*net, *outcome)
                                              : worsening_flips(*net, *outcome);
      for (const auto& [flip, neighbor] : list) {
        std::cout << net->variables[flip.variable].name << "="
                  << net->variables[flip.variable].domain[flip.to_value] << ": "
                  << format_outcome(*net, neighbor) << "\n";
      }
      return kExitOk;
    }

    if (*gen_cmd) {
      if (gen_vars < 1 || gen_domain < 1 || gen_max_parents < 0) {
        std::cerr << "cpnet: gen needs --vars >= 1, --domain >= 1\n";
        return kExitInvalid;
      }
      NetGenOptions options;
      options.variables = gen_vars;
      options.domain_size = gen_domain;
      options.acyclic = gen_acyclic;
      options.max_parents = gen_max_parents;
      std::cout << serialize_cpnet(random_cpnet(options, gen_seed));
      return kExitOk;
    }
  } catch (const SizeLimitError& error) {
    std::cerr << "cpnet: " << error.what() << "\n";
    return kExitSizeLimit;
  } catch (const std::exception& error) {
    std::cerr << "cpnet: " << error.what() << "\n";
    return kExitInvalid;
  }
  return kExitInvalid;
}

}  // namespace cpnets

#endif  // CPNETS_CLI_HPP_
