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

#ifndef CORRQUERY_EXPERIMENT_H_
#define CORRQUERY_EXPERIMENT_H_

// The experiment runner behind the command-line tool. Every command is a
// pure function of its ExperimentConfig: trial i of a configuration seeds its
// generator with TrialSeed(TrialSeed(seed, n), i), so identical configs give
// identical output bytes.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "corrquery/adversaries.h"
#include "corrquery/rational.h"
#include "corrquery/solvers.h"

namespace corrquery {

enum class Command { kGen, kSolve, kVerify, kAdversary, kHtp, kSweep };
enum class OutputFormat { kJson, kCsv };

Command ParseCommand(const std::string& name);

// "8", "4..10", "16..24:4" (step 4) or "16,20,24".
std::vector<int> ParseDimensions(const std::string& text);

// A decimal integer or "2^k".
std::uint64_t ParseBudget(const std::string& text);

// A threshold that is either a fixed rational or a multiple of n, written
// "n/8", "3n/4" or "n".
class Threshold {
 public:
  static Threshold Parse(const std::string& text);
  static Threshold FractionOfN(Rational coefficient) { return Threshold(std::move(coefficient), true); }
  static Threshold Fixed(Rational value) { return Threshold(std::move(value), false); }

  Rational Resolve(int n) const { return scales_ ? value_ * n : value_; }
  std::string ToString() const;

 private:
  Threshold(Rational value, bool scales) : value_(std::move(value)), scales_(scales) {}
  Rational value_;
  bool scales_;
};

struct ExperimentConfig {
  Command command = Command::kSolve;
  std::vector<int> dimensions;
  std::uint64_t seed = 0;
  Rational eps{1, 10};
  std::optional<std::uint64_t> budget;
  std::size_t trials = 1;
  Threshold theta_closure = Threshold::FractionOfN(Rational(1, 8));
  Threshold theta_polite = Threshold::FractionOfN(Rational(1, 4));
  // Reveal quota k; defaults to n^2.
  std::optional<std::size_t> reveal_quota;
  HtpFrontierRule frontier_rule = HtpFrontierRule::kAfterReveal;
  // gen: "as", "path", "game", "as-game" or "nnv-game".
  std::string kind = "game";
  // solve / sweep solver, htp player, or adversary inner algorithm. Each
  // command has its own default.
  std::optional<std::string> solver;
  // Utility resolution for random games.
  int bits = 8;
  // Path length; defaults to the Hamiltonian prefix plus DefaultSuffixSteps
  // for gen, and to 32 n for htp.
  std::optional<std::size_t> length;
  std::string game_path;
  std::string labeling_path;
  std::string distribution_path;
  // Empty: standard output.
  std::string output_path;
  OutputFormat format = OutputFormat::kJson;
};

struct CostReport {
  std::size_t queries = 0;
  std::size_t support = 0;
  std::size_t total = 0;
};
CostReport MakeCostReport(const SolverRun& run);

// One polite-simulation run of a sink-search algorithm against the
// outward-orienting adversary.
struct AdversaryTrial {
  int n = 0;
  std::uint64_t seed = 0;
  std::size_t inner_queries = 0;
  std::size_t issued = 0;
  int max_prior_neighbors = 0;
  std::size_t politeness_violations = 0;
  // The closure grew a batch with no polite order; the run stopped there.
  bool stalled = false;
  // Largest in-degree of an issued vertex in the finalized labeling.
  int max_in_degree = 0;
  // Issued vertices with in-degree above theta_polite.
  std::size_t wins = 0;
  bool replay_consistent = false;
};
AdversaryTrial RunAdversaryTrial(SinkSearch algorithm, int n, std::uint64_t budget,
                                 const Rational& theta_closure, const Rational& theta_polite,
                                 std::uint64_t seed);

struct HtpTrial {
  std::size_t steps = 0;
  bool won = false;
  bool succeeded = false;
  // Exact win probability of a uniform prober on this path (random_prober).
  double prober_win_probability = 0.0;
};
// `player` is "random_prober" or "tail_chaser". The hidden path is a random
// walk of `length` steps from a uniform origin.
HtpTrial RunHtpTrial(const std::string& player, int n, std::size_t length, std::size_t quota,
                     std::uint64_t budget, HtpFrontierRule rule, std::uint64_t seed);

// Runs the configured command. Returns the process exit status; errors are
// written to `err` as a one-line JSON record.
int Run(const ExperimentConfig& config, std::ostream& out, std::ostream& err);

inline constexpr int kExitFailure = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitCapacity = 3;
inline constexpr int kExitInfeasible = 4;

}  // namespace corrquery

#endif  // CORRQUERY_EXPERIMENT_H_
