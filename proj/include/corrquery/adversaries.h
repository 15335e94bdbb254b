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

#ifndef CORRQUERY_ADVERSARIES_H_
#define CORRQUERY_ADVERSARIES_H_

// Lower-bound machinery: the outward-orienting adversary for the approximate
// sink problem, the polite simulation that keeps any algorithm from querying
// a vertex after too many of its neighbors, and the Hit-The-Path referee.

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "corrquery/hypercube.h"
#include "corrquery/labeling.h"
#include "corrquery/oracles.h"
#include "corrquery/rational.h"

namespace corrquery {

// Commits every not-yet-committed edge at a queried vertex to point out of
// it (R(v, v^{(i)}) = -1). Commitments are never revised.
class SinkAdversary final : public ApproximateSinkOracle {
 public:
  explicit SinkAdversary(int n);

  int dim() const override { return n_; }
  std::vector<int> Query(const Vertex& v) override;

  const EdgeLabeling& committed() const { return committed_; }
  const std::vector<Vertex>& queried() const { return queried_; }
  const std::vector<std::vector<int>>& answers() const { return answers_; }

  // Completes every uncommitted edge from its lower endpoint to its upper
  // one. The result is consistent with every answer given so far.
  EdgeLabeling Finalize() const;

 private:
  int n_;
  EdgeLabeling committed_;
  std::vector<Vertex> queried_;
  std::vector<std::vector<int>> answers_;
};

// Replays the adversary's queries against `labeling` and compares answers.
bool ReplayConsistent(const SinkAdversary& adversary, const EdgeLabeling& labeling);

// Polite simulation of an arbitrary query algorithm. The algorithm queries
// this object; each new query q is answered by extending the closure
// Q* <- closure(Q* + q, theta_closure) and issuing the newly absorbed vertices
// to the base oracle in peel order, so that every issued vertex has at most
// theta_polite previously issued neighbors.
class PoliteSimulation final : public ApproximateSinkOracle {
 public:
  // Requires theta_polite >= 2 * theta_closure.
  PoliteSimulation(ApproximateSinkOracle& base, const Rational& theta_closure,
                   const Rational& theta_polite);

  int dim() const override { return base_.dim(); }
  // Throws InfeasibleError when the newly absorbed vertices admit no polite
  // order. Nothing from that batch is issued and the simulation stalls: every
  // later query throws as well.
  std::vector<int> Query(const Vertex& q) override;

  std::size_t inner_queries() const { return inner_queries_; }
  const std::vector<Vertex>& issued() const { return issued_; }
  // Previously issued neighbors of each issued vertex, at issue time.
  const std::vector<int>& prior_neighbors() const { return prior_neighbors_; }
  std::size_t politeness_violations() const { return violations_; }
  bool stalled() const { return stalled_; }
  const VertexSet& closure() const { return closure_.members(); }
  const Rational& theta_polite() const { return theta_polite_; }

 private:
  ApproximateSinkOracle& base_;
  Rational theta_closure_;
  Rational theta_polite_;
  int polite_limit_;
  ClosureBuilder closure_;
  VertexSet issued_set_;
  std::unordered_map<std::uint32_t, std::vector<int>> answers_;
  std::vector<Vertex> issued_;
  std::vector<int> prior_neighbors_;
  std::size_t violations_ = 0;
  std::size_t inner_queries_ = 0;
  bool stalled_ = false;
};

// Which frontier judges the step-t query. kAfterReveal: q_t wins iff it lies
// in {v_{t k + 1} ... v_L}. kBeforeReveal: iff in {v_{(t-1) k + 1} ... v_L}.
enum class HtpFrontierRule { kAfterReveal, kBeforeReveal };

// Hit-The-Path: a hidden walk v_0 ... v_L with v_0 revealed. At step t the
// player queries q_t, the next k positions are revealed regardless of the
// query, and the player wins if q_t lies on the still-unrevealed part.
class HtpReferee {
 public:
  HtpReferee(Path path, std::size_t reveal_quota,
             HtpFrontierRule rule = HtpFrontierRule::kAfterReveal);

  struct StepOutcome {
    bool win = false;
    // Positions (first, last] became revealed during this step.
    std::size_t revealed_first = 0;
    std::size_t revealed_last = 0;
  };

  // Throws UsageError once the game has been won.
  StepOutcome Step(const Vertex& q);

  int dim() const { return path_.dim(); }
  std::size_t length() const { return path_.steps(); }
  std::size_t reveal_quota() const { return quota_; }
  std::size_t step() const { return step_; }
  std::size_t revealed_upto() const { return revealed_upto_; }
  bool won() const { return won_; }
  bool end_revealed() const { return revealed_upto_ == path_.steps(); }
  Vertex origin() const { return path_.front(); }
  // v_0 ... v_{revealed_upto}.
  std::span<const std::uint32_t> revealed() const {
    return path_.bits().subspan(0, revealed_upto_ + 1);
  }
  // For audits only: the player must not look at this.
  const Path& hidden_path() const { return path_; }

 private:
  Path path_;
  std::size_t quota_;
  HtpFrontierRule rule_;
  std::unordered_map<std::uint32_t, std::size_t> last_position_;
  std::size_t step_ = 0;
  std::size_t revealed_upto_ = 0;
  bool won_ = false;
};

// Probability that a player querying uniformly random vertices wins within
// `budget` steps on `path`. The queries ignore everything revealed, so step t
// wins with probability |U_t| / 2^n where U_t is the set of vertices on the
// unrevealed part at step t.
Rational RandomProberWinProbability(const Path& path, std::size_t reveal_quota,
                                    std::size_t budget,
                                    HtpFrontierRule rule = HtpFrontierRule::kAfterReveal);

// R(v, v^{(i)}) for all i computed from the steps of `prefix` alone. Equals
// the full path labeling at v whenever v does not occur among the positions
// r, r + 1, ..., L of the full path (r = last prefix index), or r = L.
std::vector<BigInt> PathLabelsFromPrefix(std::span<const std::uint32_t> prefix, int n,
                                         const Vertex& v);

}  // namespace corrquery

#endif  // CORRQUERY_ADVERSARIES_H_
