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

#ifndef CORRQUERY_EQUILIBRIUM_H_
#define CORRQUERY_EQUILIBRIUM_H_

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "corrquery/games.h"
#include "corrquery/hypercube.h"
#include "corrquery/rational.h"

namespace corrquery {

// Probability distribution over pure profiles with finite support. Only
// strictly positive masses are stored and they sum to exactly 1.
class SparseDistribution {
 public:
  // Zero entries are dropped; negative entries or a total other than 1 throw.
  SparseDistribution(int n, std::map<std::uint32_t, Rational> entries);

  static SparseDistribution PointMass(const Vertex& v);
  static SparseDistribution Uniform(const VertexSet& support);
  // Empirical distribution count(v) / sum of counts.
  static SparseDistribution FromCounts(int n, const std::map<std::uint32_t, std::uint64_t>& counts);

  int dim() const { return n_; }
  std::size_t support_size() const { return entries_.size(); }
  const std::map<std::uint32_t, Rational>& entries() const { return entries_; }
  Rational Probability(const Vertex& v) const;
  VertexSet Support() const;

  friend bool operator==(const SparseDistribution&, const SparseDistribution&) = default;

 private:
  int n_;
  std::map<std::uint32_t, Rational> entries_;
};

// Regret_{i->b}(x) = sum_v x(v) u_i(v^{i->b}) - sum_v x(v) u_i(v).
Rational Regret(const SparseDistribution& x, const GameInstance& game, int i, int b);

struct RegretReport {
  int n = 0;
  // regrets[2 * i + b] = Regret_{i->b}.
  std::vector<Rational> regrets;
  Rational max_regret;
  Rational epsilon;
  bool pass = false;

  const Rational& regret(int i, int b) const {
    return regrets[static_cast<std::size_t>(2 * i + b)];
  }
};

// x is an eps-CE iff every Regret_{i->b}(x) <= eps.
RegretReport VerifyCorrelatedEquilibrium(const SparseDistribution& x, const GameInstance& game,
                                         const Rational& eps);

// sum_i (u_i(v^{(i)}) - u_i(v)).
Rational DeviationGain(const GameInstance& game, const Vertex& v);

// sum_v x(v) * DeviationGain(v); equals the sum of all 2n regrets.
Rational TotalRegretSum(const SparseDistribution& x, const GameInstance& game);

// A support vertex whose deviation gain is at most `bound`; the one with the
// smallest gain (lowest bits on ties). By averaging such a vertex exists
// whenever TotalRegretSum(x) <= bound. Throws InfeasibleError otherwise.
Vertex ExtractWitness(const SparseDistribution& x, const GameInstance& game,
                      const Rational& bound);

// Q' = {v : v in Q or v^{(coordinate)} in Q}.
VertexSet FlipClosure(const VertexSet& queried, int coordinate);

struct CompactionRecord {
  Rational alpha;
  Rational beta;
  VertexSet kept_region;  // Q'
  Rational input_eps;
  // eps / alpha + 4 (alpha + eps)
  Rational output_eps_bound;
  int coordinate = 0;
};

// Restricts x' to Q' and renormalizes by beta = 1 / x'(Q'). The caller is
// expected to have produced x' by running an eps-CE algorithm on the
// alpha-scaled game; the record carries the resulting regret guarantee.
// Throws InfeasibleError when x' puts no mass on Q'.
std::pair<SparseDistribution, CompactionRecord> CompactSupport(const SparseDistribution& x_prime,
                                                               const VertexSet& queried,
                                                               const Rational& alpha,
                                                               const Rational& input_eps,
                                                               int coordinate = 0);

// Closest rational to sqrt(eps) with denominator at most 2^16.
Rational DefaultAlpha(const Rational& eps);

// Outcome of the outside-weight argument: two completions of `game` that
// agree on Q' and differ only in player `coordinate`'s utilities outside it.
struct OutsideWeightAudit {
  Rational outside_weight;  // x(complement of Q')
  Rational alpha;           // max over Q' of u_coordinate
  Rational bound;           // 2 (alpha + eps)
  bool bound_violated = false;
  // Deviation target b: 1 when at least half of the outside mass has
  // v_coordinate = 0, else 0.
  int deviation_bit = 1;
  // Regret_{coordinate->b} when u_coordinate is zeroed outside Q'.
  Rational regret_zeroed;
  // Regret_{coordinate->b} when u_coordinate outside Q' is 1 exactly where
  // v_coordinate = b.
  Rational regret_split;
  // Some completion makes x fail to be an eps-CE.
  bool violation_found = false;
};

OutsideWeightAudit AuditOutsideWeight(const SparseDistribution& x, const GameInstance& game,
                                      const VertexSet& queried, const Rational& eps,
                                      int coordinate = 0);

}  // namespace corrquery

#endif  // CORRQUERY_EQUILIBRIUM_H_
