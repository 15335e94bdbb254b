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

#include <algorithm>
#include <cmath>
#include <map>

#include "corrquery/errors.h"
#include "corrquery/random.h"
#include "corrquery/solvers.h"

namespace corrquery {

std::size_t DefaultMaxSteps(int n, const Rational& eps) {
  if (eps <= 0) throw UsageError("eps must be positive");
  const double e = ToDouble(eps);
  return static_cast<std::size_t>(std::ceil(64.0 * std::log(4.0 * n) / (e * e)));
}

SolverRun RegretMatching(const GameInstance& game, const RegretMatchingOptions& options) {
  if (options.eps <= 0) throw UsageError("regret matching needs eps > 0");
  const int n = game.num_players();
  const std::size_t max_steps = options.max_steps.value_or(DefaultMaxSteps(n, options.eps));
  if (max_steps == 0) throw UsageError("regret matching needs at least one step");
  const double stop_at = ToDouble(options.eps) / 2.0;

  Rng rng(options.seed);
  GameOracle oracle(game);
  // Cumulative realized regrets: to_one[i] = sum over rounds where i played 0
  // of u_i(v^{(i)}) - u_i(v); to_zero symmetrically.
  std::vector<double> to_one(static_cast<std::size_t>(n), 0.0);
  std::vector<double> to_zero(static_cast<std::size_t>(n), 0.0);
  std::vector<int> last(static_cast<std::size_t>(n), -1);
  std::map<std::uint32_t, std::uint64_t> counts;

  std::size_t rounds = 0;
  while (rounds < max_steps) {
    std::uint32_t bits = 0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const double up = std::max(to_one[k], 0.0);
      const double down = std::max(to_zero[k], 0.0);
      int action;
      if (up + down > 0.0) {
        action = UniformUnit(rng) < up / (up + down) ? 1 : 0;
      } else if (last[k] < 0) {
        action = static_cast<int>(UniformBelow(rng, 2));
      } else {
        action = last[k];
      }
      last[k] = action;
      bits |= static_cast<std::uint32_t>(action) << i;
    }
    const Vertex v(n, bits);
    const std::vector<Rational> here = oracle.Query(v);
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      const std::vector<Rational> there = oracle.Query(Flip(v, i));
      const double gain = ToDouble(there[k]) - ToDouble(here[k]);
      (last[k] == 0 ? to_one[k] : to_zero[k]) += gain;
    }
    ++counts[bits];
    ++rounds;

    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto k = static_cast<std::size_t>(i);
      worst = std::max({worst, to_one[k], to_zero[k]});
    }
    if (worst / static_cast<double>(rounds) <= stop_at) break;
  }

  SolverRun run{"regret_matching", SparseDistribution::FromCounts(n, counts), std::nullopt,
                oracle.transcript(), false, options.seed, rounds};
  run.transcript.ChargeSupport(run.distribution->support_size());
  run.succeeded = VerifyCorrelatedEquilibrium(*run.distribution, game, options.eps).pass;
  return run;
}

}  // namespace corrquery
