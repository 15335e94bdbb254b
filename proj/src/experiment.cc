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

#include "corrquery/experiment.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "corrquery/errors.h"
#include "corrquery/json_io.h"
#include "corrquery/random.h"

namespace corrquery {
namespace {

std::uint64_t ConfigTrialSeed(std::uint64_t seed, int n, std::size_t trial) {
  return TrialSeed(TrialSeed(seed, static_cast<std::uint64_t>(n)), trial);
}

double Median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 == 1 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
}

// Rows of a command-specific table; JSON is an array of objects, CSV a
// header line followed by one line per row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<Json>> rows;

  Json ToJson() const {
    Json out = Json::array();
    for (const auto& row : rows) {
      Json record = Json::object();
      for (std::size_t c = 0; c < header.size(); ++c) record[header[c]] = row[c];
      out.push_back(std::move(record));
    }
    return out;
  }

  std::string ToCsv() const {
    std::ostringstream csv;
    for (std::size_t c = 0; c < header.size(); ++c) csv << (c ? "," : "") << header[c];
    csv << "\n";
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        csv << (c ? "," : "") << (row[c].is_string() ? row[c].get<std::string>() : row[c].dump());
      }
      csv << "\n";
    }
    return csv.str();
  }
};

Json ReadJsonFile(const std::string& path, const char* flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag);
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

int SingleDimension(const ExperimentConfig& config) {
  if (config.dimensions.size() != 1) throw UsageError("this command needs a single --n");
  return config.dimensions.front();
}

const std::vector<int>& Dimensions(const ExperimentConfig& config) {
  if (config.dimensions.empty()) throw UsageError("missing --n");
  return config.dimensions;
}

void RequireJson(const ExperimentConfig& config, const char* command) {
  if (config.format != OutputFormat::kJson) {
    throw UsageError(std::string(command) + " only writes JSON");
  }
}

struct Output {
  std::string text;
  int status = 0;
};

Output FromTable(const ExperimentConfig& config, const Table& table) {
  if (config.format == OutputFormat::kCsv) return {table.ToCsv(), 0};
  return {table.ToJson().dump(2) + "\n", 0};
}

Output Gen(const ExperimentConfig& config) {
  RequireJson(config, "gen");
  const int n = SingleDimension(config);
  Rng rng(ConfigTrialSeed(config.seed, n, 0));
  Json doc;
  if (config.kind == "as" || config.kind == "as-game") {
    auto labeling = std::make_shared<const EdgeLabeling>(RandomApproximateSinkLabeling(n, rng));
    doc = config.kind == "as" ? LabelingToJson(*labeling, config.seed)
                              : GameToJson(*GameFromApproximateSink(labeling));
  } else if (config.kind == "path" || config.kind == "nnv-game") {
    PathInstance instance =
        MakeHamiltonianPathInstance(n, config.length.value_or(DefaultSuffixSteps(n)), rng);
    if (config.kind == "path") {
      doc = LabelingToJson(instance.labeling, config.seed, &instance.path);
    } else {
      doc = GameToJson(*GameFromNonNegativeVertex(
          std::make_shared<const EdgeLabeling>(std::move(instance.labeling))));
    }
  } else if (config.kind == "game") {
    if (config.bits < 0 || config.bits > 30) throw UsageError("--bits must be in 0..30");
    doc = GameToJson(RandomGame(n, config.bits, rng));
  } else {
    throw UsageError("unknown --kind '" + config.kind + "' (as, path, game, as-game, nnv-game)");
  }
  return {doc.dump(2) + "\n", 0};
}

SolverRun SolveExact(const GameInstance& game) {
  const int n = game.num_players();
  SolverRun run{"exact_ce", ExactCorrelatedEquilibrium(game), std::nullopt, QueryTranscript(n),
                false, 0, 0};
  // The exact solver reads the whole table.
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << n); ++b) run.transcript.Record(Vertex(n, b));
  run.transcript.ChargeSupport(run.distribution->support_size());
  run.succeeded = VerifyCorrelatedEquilibrium(*run.distribution, game, Rational(0)).pass;
  return run;
}

SolverRun SolveGame(const ExperimentConfig& config, const std::string& solver) {
  if (!config.labeling_path.empty()) throw UsageError(solver + " reads a game, not --labeling");
  GamePtr game = GameFromJson(ReadJsonFile(config.game_path, "--game"));
  if (solver == "exact_ce") return SolveExact(*game);
  std::optional<std::size_t> max_steps;
  if (config.budget) max_steps = *config.budget;
  return RegretMatching(*game, {config.eps, config.seed, max_steps});
}

SolverRun SolveLabeling(const ExperimentConfig& config, const std::string& solver) {
  if (!config.game_path.empty()) throw UsageError(solver + " reads --labeling, not a game");
  LabelingDocument doc = LabelingFromJson(ReadJsonFile(config.labeling_path, "--labeling"));
  const int n = doc.labeling.dim();
  if (solver == "tail_chaser") {
    if (!doc.path) throw UsageError("tail_chaser needs a labeling of kind \"path\"");
    NonNegativeVertexOracle oracle(doc.labeling);
    return TailChaser(oracle, doc.path->front(), config.budget.value_or(doc.path->size()));
  }
  const SinkSearch algorithm = ParseSinkSearch(solver);
  if (doc.labeling.kind() != LabelingKind::kApproximateSink) {
    throw UsageError(solver + " needs a labeling of kind \"as\"");
  }
  LabelingSinkOracle oracle(doc.labeling);
  const Rational threshold = config.theta_polite.Resolve(n);
  SolverRun run = RunSinkSearch(algorithm, oracle, config.budget.value_or(std::uint64_t{1} << n),
                                threshold, config.seed);
  run.succeeded = run.vertex.has_value() &&
                  IsApproximateSink(ComputeInDegree(doc.labeling, *run.vertex), threshold);
  return run;
}

Output Solve(const ExperimentConfig& config) {
  RequireJson(config, "solve");
  const std::string solver = config.solver.value_or("regret_matching");
  const SolverRun run = solver == "regret_matching" || solver == "exact_ce"
                            ? SolveGame(config, solver)
                            : SolveLabeling(config, solver);
  return {SolverRunToJson(run).dump(2) + "\n", run.succeeded ? 0 : kExitFailure};
}

Output Verify(const ExperimentConfig& config) {
  RequireJson(config, "verify");
  GamePtr game = GameFromJson(ReadJsonFile(config.game_path, "--game"));
  SparseDistribution x = DistributionFromJson(ReadJsonFile(config.distribution_path, "--dist"),
                                              game->num_players());
  const RegretReport report = VerifyCorrelatedEquilibrium(x, *game, config.eps);
  return {RegretReportToJson(report).dump(2) + "\n", report.pass ? 0 : kExitFailure};
}

Output Adversary(const ExperimentConfig& config) {
  const SinkSearch algorithm = ParseSinkSearch(config.solver.value_or("greedy_sink"));
  const std::uint64_t budget = config.budget.value_or(std::uint64_t{1} << 12);
  Table table{{"n", "algorithm", "trials", "theta_closure", "theta_polite", "successes",
               "max_in_degree", "median_issued", "max_issued", "stalled",
               "politeness_violations", "replay_failures"},
              {}};
  for (int n : Dimensions(config)) {
    const Rational theta_closure = config.theta_closure.Resolve(n);
    const Rational theta_polite = config.theta_polite.Resolve(n);
    std::size_t successes = 0, stalled = 0, violations = 0, replay_failures = 0, max_issued = 0;
    int max_in_degree = 0;
    std::vector<double> issued;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const AdversaryTrial result = RunAdversaryTrial(
          algorithm, n, budget, theta_closure, theta_polite, ConfigTrialSeed(config.seed, n, trial));
      successes += result.wins > 0 ? 1 : 0;
      stalled += result.stalled ? 1 : 0;
      violations += result.politeness_violations;
      replay_failures += result.replay_consistent ? 0 : 1;
      max_in_degree = std::max(max_in_degree, result.max_in_degree);
      max_issued = std::max(max_issued, result.issued);
      issued.push_back(static_cast<double>(result.issued));
    }
    table.rows.push_back({n, ToString(algorithm), config.trials, ToString(theta_closure),
                          ToString(theta_polite), successes, max_in_degree, Median(issued),
                          max_issued, stalled, violations, replay_failures});
  }
  return FromTable(config, table);
}

Output Htp(const ExperimentConfig& config) {
  const std::string player = config.solver.value_or("random_prober");
  Table table{{"n", "player", "length", "reveal_quota", "budget", "trials", "wins", "win_rate",
               "std_error", "union_bound", "exact_win_probability", "median_steps",
               "success_rate"},
              {}};
  for (int n : Dimensions(config)) {
    const std::size_t length = config.length.value_or(32 * static_cast<std::size_t>(n));
    const std::size_t quota = config.reveal_quota.value_or(static_cast<std::size_t>(n * n));
    const std::uint64_t budget = config.budget.value_or(32);
    std::size_t wins = 0, successes = 0;
    double probability_sum = 0.0;
    std::vector<double> steps;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const HtpTrial result = RunHtpTrial(player, n, length, quota, budget, config.frontier_rule,
                                          ConfigTrialSeed(config.seed, n, trial));
      wins += result.won ? 1 : 0;
      successes += result.succeeded ? 1 : 0;
      probability_sum += result.prober_win_probability;
      steps.push_back(static_cast<double>(result.steps));
    }
    const double trials = static_cast<double>(std::max<std::size_t>(config.trials, 1));
    const double rate = static_cast<double>(wins) / trials;
    const double union_bound = static_cast<double>(budget) * static_cast<double>(length) /
                               std::ldexp(1.0, n - 1);
    table.rows.push_back({n, player, length, quota, budget, config.trials, wins, rate,
                          std::sqrt(rate * (1.0 - rate) / trials), union_bound,
                          player == "random_prober" ? Json(probability_sum / trials) : Json(nullptr),
                          Median(steps), static_cast<double>(successes) / trials});
  }
  return FromTable(config, table);
}

Output Sweep(const ExperimentConfig& config) {
  const std::string solver = config.solver.value_or("regret_matching");
  if (solver != "regret_matching") throw UsageError("sweep supports --solver regret_matching");
  Table table{{"n", "trials", "max_steps", "median_queries", "median_cost", "success_rate"}, {}};
  for (int n : Dimensions(config)) {
    const std::size_t max_steps = config.budget.value_or(DefaultMaxSteps(n, config.eps));
    std::vector<double> queries, costs;
    std::size_t successes = 0;
    for (std::size_t trial = 0; trial < config.trials; ++trial) {
      const std::uint64_t seed = ConfigTrialSeed(config.seed, n, trial);
      Rng rng(seed);
      const TableGame game = RandomGame(n, config.bits, rng);
      const SolverRun run = RegretMatching(game, {config.eps, TrialSeed(seed, 1), max_steps});
      queries.push_back(static_cast<double>(run.transcript.query_count()));
      costs.push_back(static_cast<double>(run.transcript.cost()));
      successes += run.succeeded ? 1 : 0;
    }
    const double trials = static_cast<double>(std::max<std::size_t>(config.trials, 1));
    table.rows.push_back({n, config.trials, max_steps, Median(queries), Median(costs),
                          static_cast<double>(successes) / trials});
  }
  return FromTable(config, table);
}

Output Dispatch(const ExperimentConfig& config) {
  switch (config.command) {
    case Command::kGen:
      return Gen(config);
    case Command::kSolve:
      return Solve(config);
    case Command::kVerify:
      return Verify(config);
    case Command::kAdversary:
      return Adversary(config);
    case Command::kHtp:
      return Htp(config);
    case Command::kSweep:
      return Sweep(config);
  }
  throw UsageError("unknown command");
}

void WriteError(std::ostream& err, const char* kind, const std::string& message) {
  err << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

Command ParseCommand(const std::string& name) {
  if (name == "gen") return Command::kGen;
  if (name == "solve") return Command::kSolve;
  if (name == "verify") return Command::kVerify;
  if (name == "adversary") return Command::kAdversary;
  if (name == "htp") return Command::kHtp;
  if (name == "sweep") return Command::kSweep;
  throw UsageError("unknown command '" + name + "'");
}

std::vector<int> ParseDimensions(const std::string& text) {
  auto parse_int = [&](const std::string& token) {
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size()) throw UsageError("bad dimension list '" + text + "'");
    if (value < 1 || value > kMaxDimension) {
      throw UsageError("n must be in 1.." + std::to_string(kMaxDimension));
    }
    return value;
  };
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    std::string rest = text.substr(dots + 2);
    int step = 1;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
      step = parse_int(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    const int lo = parse_int(text.substr(0, dots));
    const int hi = parse_int(rest);
    if (lo > hi) throw UsageError("empty dimension range '" + text + "'");
    for (int n = lo; n <= hi; n += step) out.push_back(n);
    return out;
  }
  std::stringstream list(text);
  std::string token;
  while (std::getline(list, token, ',')) out.push_back(parse_int(token));
  if (out.empty()) throw UsageError("empty dimension list");
  return out;
}

std::uint64_t ParseBudget(const std::string& text) {
  BigInt value;
  if (const auto caret = text.find('^'); caret != std::string::npos) {
    const BigInt base = ParseBigInt(text.substr(0, caret));
    const BigInt exponent = ParseBigInt(text.substr(caret + 1));
    if (base != 2 || exponent < 0 || exponent > 63) throw UsageError("budget must be 2^k, k < 64");
    value = PowerOfTwo(static_cast<unsigned>(exponent.get_ui()));
  } else {
    value = ParseBigInt(text);
  }
  if (value < 0 || !value.fits_ulong_p()) throw UsageError("budget out of range: " + text);
  return value.get_ui();
}

Threshold Threshold::Parse(const std::string& text) {
  const auto pos = text.find('n');
  if (pos == std::string::npos) return Fixed(ParseRational(text));
  // "[c]n[/d]"
  const std::string head = text.substr(0, pos);
  const std::string tail = text.substr(pos + 1);
  Rational coefficient = head.empty() ? Rational(1) : ParseRational(head);
  if (!tail.empty()) {
    if (tail[0] != '/') throw UsageError("bad threshold '" + text + "'");
    const BigInt divisor = ParseBigInt(tail.substr(1));
    if (divisor <= 0) throw UsageError("bad threshold '" + text + "'");
    coefficient /= Rational(divisor);
  }
  if (coefficient < 0) throw UsageError("thresholds must be non-negative");
  return FractionOfN(std::move(coefficient));
}

std::string Threshold::ToString() const {
  return scales_ ? corrquery::ToString(value_) + "*n" : corrquery::ToString(value_);
}

CostReport MakeCostReport(const SolverRun& run) {
  return {run.transcript.query_count(), run.transcript.support_size_charged(),
          run.transcript.cost()};
}

AdversaryTrial RunAdversaryTrial(SinkSearch algorithm, int n, std::uint64_t budget,
                                 const Rational& theta_closure, const Rational& theta_polite,
                                 std::uint64_t seed) {
  SinkAdversary adversary(n);
  PoliteSimulation polite(adversary, theta_closure, theta_polite);
  AdversaryTrial trial;
  trial.n = n;
  trial.seed = seed;
  try {
    RunSinkSearch(algorithm, polite, budget, theta_polite, seed);
  } catch (const InfeasibleError&) {
    // Reported through polite.stalled().
  }
  trial.inner_queries = polite.inner_queries();
  trial.issued = polite.issued().size();
  trial.stalled = polite.stalled();
  trial.politeness_violations = polite.politeness_violations();
  for (int prior : polite.prior_neighbors()) {
    trial.max_prior_neighbors = std::max(trial.max_prior_neighbors, prior);
  }
  const EdgeLabeling finalized = adversary.Finalize();
  trial.replay_consistent = ReplayConsistent(adversary, finalized);
  for (const Vertex& v : polite.issued()) {
    const InDegree degree = ComputeInDegree(finalized, v);
    trial.max_in_degree = std::max(trial.max_in_degree, degree.in_degree);
    if (IsApproximateSink(degree, theta_polite)) ++trial.wins;
  }
  return trial;
}

HtpTrial RunHtpTrial(const std::string& player, int n, std::size_t length, std::size_t quota,
                     std::uint64_t budget, HtpFrontierRule rule, std::uint64_t seed) {
  if (player != "random_prober" && player != "tail_chaser") {
    throw UsageError("unknown HTP player '" + player + "' (random_prober, tail_chaser)");
  }
  CheckDimension(n);
  Rng rng(seed);
  const Vertex origin(n, static_cast<std::uint32_t>(UniformBelow(rng, std::uint64_t{1} << n)));
  Path path = RandomWalk(origin, length, rng);
  HtpTrial trial;
  if (player == "random_prober") {
    trial.prober_win_probability = ToDouble(RandomProberWinProbability(path, quota, budget, rule));
  }
  HtpReferee referee(std::move(path), quota, rule);
  const SolverRun run = player == "random_prober"
                            ? RandomHtpProber(referee, budget, TrialSeed(seed, 1))
                            : TailChaser(referee, budget);
  trial.steps = run.steps;
  trial.won = referee.won();
  trial.succeeded = run.succeeded;
  return trial;
}

int Run(const ExperimentConfig& config, std::ostream& out, std::ostream& err) {
  Output output;
  try {
    output = Dispatch(config);
  } catch (const UsageError& e) {
    WriteError(err, "usage", e.what());
    return kExitUsage;
  } catch (const CapacityError& e) {
    WriteError(err, "capacity", e.what());
    return kExitCapacity;
  } catch (const InfeasibleError& e) {
    WriteError(err, "infeasible", e.what());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    WriteError(err, "internal", e.what());
    return kExitFailure;
  }
  if (config.output_path.empty()) {
    out << output.text;
  } else {
    std::ofstream file(config.output_path, std::ios::binary);
    if (!file) {
      WriteError(err, "usage", "cannot write " + config.output_path);
      return kExitUsage;
    }
    file << output.text;
  }
  return output.status;
}

}  // namespace corrquery
