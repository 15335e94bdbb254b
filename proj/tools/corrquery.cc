// Copyright 2026 The corrquery Authors
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

// Command-line front end: corrquery <gen|solve|verify|adversary|htp|sweep> [flags].

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "corrquery/errors.h"
#include "corrquery/experiment.h"

namespace {

using corrquery::ExperimentConfig;

struct RawFlags {
  std::string n;
  std::string eps;
  std::string budget;
  std::string theta_closure;
  std::string theta_polite;
  std::string rule = "after";
  std::string format = "json";
  std::string solver;
};

void AddCommon(CLI::App* command, ExperimentConfig& config, RawFlags& raw) {
  command->add_option("--seed", config.seed, "Master seed");
  command->add_option("--out", config.output_path, "Output file (default: stdout)");
  command->add_option("--format", raw.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

void AddDimensions(CLI::App* command, RawFlags& raw, bool required) {
  auto* option = command->add_option("--n", raw.n, "Dimension: 8, 4..10, 16..24:4 or 16,20,24");
  if (required) option->required();
}

int Fail(const char* kind, const std::string& message) {
  std::cerr << nlohmann::ordered_json{{"error", kind}, {"message", message}}.dump() << "\n";
  return corrquery::kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  ExperimentConfig config;
  RawFlags raw;
  CLI::App app{"Query-complexity experiments for correlated equilibria of bi-strategy games"};
  app.require_subcommand(1);

  auto* gen = app.add_subcommand("gen", "Generate a labeling or game instance as JSON");
  AddCommon(gen, config, raw);
  AddDimensions(gen, raw, true);
  gen->add_option("--kind", config.kind, "as, path, game, as-game or nnv-game");
  gen->add_option("--bits", config.bits, "Utility resolution t of random games");
  gen->add_option("--length", config.length, "Suffix steps of path instances");

  auto* solve = app.add_subcommand("solve", "Run one solver on an instance");
  AddCommon(solve, config, raw);
  solve->add_option("--solver", raw.solver,
                    "regret_matching, exact_ce, tail_chaser, greedy_sink, random_probe, "
                    "walk_probe or neighborhood_sweep");
  solve->add_option("--game", config.game_path, "Game JSON");
  solve->add_option("--labeling", config.labeling_path, "Labeling JSON");
  solve->add_option("--eps", raw.eps, "Target epsilon (p/q or decimal)");
  solve->add_option("--budget", raw.budget, "Step or query budget (integer or 2^k)");
  solve->add_option("--theta-polite", raw.theta_polite, "In-degree threshold of sink searches");

  auto* verify = app.add_subcommand("verify", "Check a distribution against a game");
  AddCommon(verify, config, raw);
  verify->add_option("--game", config.game_path, "Game JSON")->required();
  verify->add_option("--dist", config.distribution_path, "Distribution JSON")->required();
  verify->add_option("--eps", raw.eps, "Epsilon (p/q or decimal)");

  auto* adversary = app.add_subcommand("adversary", "Polite simulation against the sink adversary");
  AddCommon(adversary, config, raw);
  AddDimensions(adversary, raw, true);
  adversary->add_option("--algo,--solver", raw.solver,
                        "greedy_sink, random_probe, walk_probe or neighborhood_sweep");
  adversary->add_option("--budget", raw.budget, "Inner query budget (default 2^12)");
  adversary->add_option("--trials", config.trials, "Trials per n");
  adversary->add_option("--theta-closure", raw.theta_closure, "Closure threshold (default n/8)");
  adversary->add_option("--theta-polite", raw.theta_polite, "Politeness threshold (default n/4)");

  auto* htp = app.add_subcommand("htp", "Hit-The-Path games");
  AddCommon(htp, config, raw);
  AddDimensions(htp, raw, true);
  htp->add_option("--player,--solver", raw.solver, "random_prober or tail_chaser");
  htp->add_option("--length", config.length, "Hidden path length L (default 32n)");
  htp->add_option("--reveal-quota", config.reveal_quota, "Positions revealed per step (default n^2)");
  htp->add_option("--budget", raw.budget, "Steps T (default 32)");
  htp->add_option("--trials", config.trials, "Trials per n");
  htp->add_option("--rule", raw.rule, "Which frontier judges a query: after or before")
      ->check(CLI::IsMember({"after", "before"}));

  auto* sweep = app.add_subcommand("sweep", "Scaling sweep of regret matching on random games");
  AddCommon(sweep, config, raw);
  AddDimensions(sweep, raw, true);
  sweep->add_option("--solver", raw.solver, "regret_matching");
  sweep->add_option("--eps", raw.eps, "Target epsilon (p/q or decimal)");
  sweep->add_option("--trials", config.trials, "Trials per n");
  sweep->add_option("--bits", config.bits, "Utility resolution t");
  sweep->add_option("--budget", raw.budget, "Round cap (default ceil(64 ln(4n) / eps^2))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return Fail("usage", e.what());
  }

  try {
    config.command = corrquery::ParseCommand(app.get_subcommands().front()->get_name());
    if (!raw.n.empty()) config.dimensions = corrquery::ParseDimensions(raw.n);
    if (!raw.eps.empty()) config.eps = corrquery::ParseRational(raw.eps);
    if (!raw.budget.empty()) config.budget = corrquery::ParseBudget(raw.budget);
    if (!raw.theta_closure.empty()) {
      config.theta_closure = corrquery::Threshold::Parse(raw.theta_closure);
    }
    if (!raw.theta_polite.empty()) {
      config.theta_polite = corrquery::Threshold::Parse(raw.theta_polite);
    }
    if (!raw.solver.empty()) config.solver = raw.solver;
    config.frontier_rule = raw.rule == "before" ? corrquery::HtpFrontierRule::kBeforeReveal
                                                : corrquery::HtpFrontierRule::kAfterReveal;
    config.format =
        raw.format == "csv" ? corrquery::OutputFormat::kCsv : corrquery::OutputFormat::kJson;
  } catch (const corrquery::UsageError& e) {
    return Fail("usage", e.what());
  }
  return corrquery::Run(config, std::cout, std::cerr);
}
