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

#ifndef CORRQUERY_SOLVERS_H_
#define CORRQUERY_SOLVERS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "corrquery/adversaries.h"
#include "corrquery/equilibrium.h"
#include "corrquery/games.h"
#include "corrquery/oracles.h"
#include "corrquery/rational.h"

namespace corrquery {

// Result of one algorithm run. `succeeded` is always recomputed by the
// matching verifier, never taken from the algorithm itself.
struct SolverRun {
  std::string solver;
  std::optional<SparseDistribution> distribution;
  std::optional<Vertex> vertex;
  QueryTranscript transcript;
  bool succeeded = false;
  std::uint64_t seed = 0;
  // Rounds for regret matching, referee steps for HTP players.
  std::size_t steps = 0;
};

// ceil(64 ln(4n) / eps^2).
std::size_t DefaultMaxSteps(int n, const Rational& eps);

struct RegretMatchingOptions {
  Rational eps;
  std::uint64_t seed = 0;
  // Defaults to DefaultMaxSteps(n, eps).
  std::optional<std::size_t> max_steps;
};

// Regret matching with conditional (internal) regrets. Each round samples a
// profile from the players' independent mixed actions and queries it plus its
// n single-player deviations. Player i then plays 1 with probability
// R+(0->1) / (R+(0->1) + R+(1->0)) over its cumulative realized regrets, and
// repeats its last action when both are zero (the first round is uniform).
// Stops once every regret of the empirical play is at most eps / 2.
SolverRun RegretMatching(const GameInstance& game, const RegretMatchingOptions& options);

// Exact correlated equilibrium by rational simplex (phase one over the
// 2^n profile simplex). Requires n <= kMaxExactDimension.
inline constexpr int kMaxExactDimension = 10;
SparseDistribution ExactCorrelatedEquilibrium(const GameInstance& game);

// Approximate-sink search baselines. Each stops at the first queried vertex
// with in-degree strictly above `threshold` or when `budget` queries are used.
enum class SinkSearch {
  // Queries the unqueried vertex with the most observed edges pointing into
  // it (ties: lowest bits), starting from the all-zeros vertex.
  kGreedySink,
  // Uniformly random vertices.
  kRandomProbe,
  // A random walk: each query is a random neighbor of the previous one.
  kWalkProbe,
  // A vertex followed by all of its neighbors, then a fresh random center.
  kNeighborhoodSweep,
};

std::string ToString(SinkSearch algorithm);
SinkSearch ParseSinkSearch(const std::string& name);

SolverRun RunSinkSearch(SinkSearch algorithm, ApproximateSinkOracle& oracle, std::size_t budget,
                        const Rational& threshold, std::uint64_t seed);

inline SolverRun GreedySinkSearch(ApproximateSinkOracle& oracle, std::size_t budget,
                                  const Rational& threshold) {
  return RunSinkSearch(SinkSearch::kGreedySink, oracle, budget, threshold, 0);
}

// Plays Hit-The-Path by following the revealed path: each step it queries the
// revealed frontier vertex. Succeeds on a win or once the end of the path has
// been revealed (output v_L).
SolverRun TailChaser(HtpReferee& referee, std::size_t budget);

// Plays Hit-The-Path with uniformly random queries; succeeds only on a win.
SolverRun RandomHtpProber(HtpReferee& referee, std::size_t budget, std::uint64_t seed);

// Follows a path labeling from `start`, assumed to be v_0: queries the current
// vertex, stops if its out-weight is non-negative, and otherwise takes step
// j + 1 along the edge whose label, minus the steps already retraced, equals
// -(j + 1) (the most negative residual if none does). Later crossings of the
// same edge can disguise the step, so the walk may lose the path. Success is
// checked with NonNegativeVertex on the oracle's labeling.
SolverRun TailChaser(NonNegativeVertexOracle& oracle, const Vertex& start, std::size_t budget);

}  // namespace corrquery

#endif  // CORRQUERY_SOLVERS_H_
