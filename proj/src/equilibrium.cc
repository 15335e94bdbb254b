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

#include "corrquery/equilibrium.h"

#include <algorithm>
#include <optional>

#include "corrquery/errors.h"

namespace corrquery {

SparseDistribution::SparseDistribution(int n, std::map<std::uint32_t, Rational> entries) : n_(n) {
  CheckDimension(n);
  Rational total = 0;
  for (auto& [bits, p] : entries) {
    Vertex(n, bits);  // validates the profile
    if (p < 0) throw UsageError("negative probability");
    if (p == 0) continue;
    total += p;
    entries_.emplace(bits, std::move(p));
  }
  if (total != 1) throw UsageError("probabilities sum to " + ToString(total) + ", not 1");
}

SparseDistribution SparseDistribution::PointMass(const Vertex& v) {
  return SparseDistribution(v.dim(), {{v.bits(), Rational(1)}});
}

SparseDistribution SparseDistribution::Uniform(const VertexSet& support) {
  if (support.empty()) throw UsageError("uniform distribution over an empty set");
  std::map<std::uint32_t, Rational> entries;
  Rational p(1, static_cast<unsigned long>(support.size()));
  p.canonicalize();
  for (std::uint32_t b : support.bits()) entries.emplace(b, p);
  return SparseDistribution(support.dim(), std::move(entries));
}

SparseDistribution SparseDistribution::FromCounts(
    int n, const std::map<std::uint32_t, std::uint64_t>& counts) {
  std::uint64_t total = 0;
  for (const auto& [bits, c] : counts) total += c;
  if (total == 0) throw UsageError("empirical distribution of zero samples");
  std::map<std::uint32_t, Rational> entries;
  for (const auto& [bits, c] : counts) {
    Rational p(static_cast<unsigned long>(c), static_cast<unsigned long>(total));
    p.canonicalize();
    entries.emplace(bits, std::move(p));
  }
  return SparseDistribution(n, std::move(entries));
}

Rational SparseDistribution::Probability(const Vertex& v) const {
  if (v.dim() != n_) return Rational(0);
  auto it = entries_.find(v.bits());
  return it == entries_.end() ? Rational(0) : it->second;
}

VertexSet SparseDistribution::Support() const {
  VertexSet out(n_);
  for (const auto& [bits, p] : entries_) out.insert(Vertex(n_, bits));
  return out;
}

namespace {

void CheckGameMatches(const SparseDistribution& x, const GameInstance& game) {
  if (x.dim() != game.num_players()) {
    throw UsageError("distribution dimension does not match the game");
  }
}

}  // namespace

Rational Regret(const SparseDistribution& x, const GameInstance& game, int i, int b) {
  CheckGameMatches(x, game);
  CheckPlayer(game.num_players(), i);
  if (b != 0 && b != 1) throw UsageError("strategy bit must be 0 or 1");
  Rational total = 0;
  for (const auto& [bits, p] : x.entries()) {
    const Vertex v(x.dim(), bits);
    if (v.bit(i) == b) continue;
    total += p * (game.Utility(Flip(v, i), i) - game.Utility(v, i));
  }
  return total;
}

RegretReport VerifyCorrelatedEquilibrium(const SparseDistribution& x, const GameInstance& game,
                                         const Rational& eps) {
  CheckGameMatches(x, game);
  const int n = game.num_players();
  RegretReport report;
  report.n = n;
  report.epsilon = eps;
  report.regrets.assign(static_cast<std::size_t>(2 * n), Rational(0));
  for (const auto& [bits, p] : x.entries()) {
    const Vertex v(n, bits);
    const std::vector<Rational> here = game.Utilities(v);
    for (int i = 0; i < n; ++i) {
      // Only deviations to the other action contribute.
      const int b = 1 - v.bit(i);
      const Rational there = game.Utility(Flip(v, i), i);
      report.regrets[static_cast<std::size_t>(2 * i + b)] +=
          p * (there - here[static_cast<std::size_t>(i)]);
    }
  }
  report.max_regret = *std::max_element(report.regrets.begin(), report.regrets.end());
  report.pass = report.max_regret <= eps;
  return report;
}

Rational DeviationGain(const GameInstance& game, const Vertex& v) {
  const std::vector<Rational> here = game.Utilities(v);
  Rational gain = 0;
  for (int i = 0; i < game.num_players(); ++i) {
    gain += game.Utility(Flip(v, i), i) - here[static_cast<std::size_t>(i)];
  }
  return gain;
}

Rational TotalRegretSum(const SparseDistribution& x, const GameInstance& game) {
  CheckGameMatches(x, game);
  Rational total = 0;
  for (const auto& [bits, p] : x.entries()) {
    total += p * DeviationGain(game, Vertex(x.dim(), bits));
  }
  return total;
}

Vertex ExtractWitness(const SparseDistribution& x, const GameInstance& game,
                      const Rational& bound) {
  CheckGameMatches(x, game);
  std::optional<Vertex> best;
  Rational best_gain;
  for (const auto& [bits, p] : x.entries()) {
    const Vertex v(x.dim(), bits);
    Rational gain = DeviationGain(game, v);
    if (!best || gain < best_gain) {
      best = v;
      best_gain = std::move(gain);
    }
  }
  if (!best || best_gain > bound) {
    throw InfeasibleError("no support vertex has deviation gain <= " + ToString(bound));
  }
  return *best;
}

VertexSet FlipClosure(const VertexSet& queried, int coordinate) {
  CheckPlayer(queried.dim(), coordinate);
  VertexSet out = queried;
  for (std::uint32_t b : queried.bits()) out.insert(Flip(Vertex(queried.dim(), b), coordinate));
  return out;
}

std::pair<SparseDistribution, CompactionRecord> CompactSupport(const SparseDistribution& x_prime,
                                                               const VertexSet& queried,
                                                               const Rational& alpha,
                                                               const Rational& input_eps,
                                                               int coordinate) {
  if (queried.dim() != x_prime.dim()) throw UsageError("dimension mismatch");
  if (alpha <= 0) throw UsageError("alpha must be positive");
  if (input_eps < 0) throw UsageError("eps must be non-negative");
  VertexSet kept = FlipClosure(queried, coordinate);
  Rational kept_mass = 0;
  for (const auto& [bits, p] : x_prime.entries()) {
    if (kept.contains_bits(bits)) kept_mass += p;
  }
  if (kept_mass == 0) throw InfeasibleError("all weight lies outside the queried region");
  Rational beta = 1 / kept_mass;
  std::map<std::uint32_t, Rational> entries;
  for (const auto& [bits, p] : x_prime.entries()) {
    if (kept.contains_bits(bits)) entries.emplace(bits, Rational(beta * p));
  }
  CompactionRecord record{alpha,
                          beta,
                          std::move(kept),
                          input_eps,
                          Rational(input_eps / alpha + 4 * (alpha + input_eps)),
                          coordinate};
  return {SparseDistribution(x_prime.dim(), std::move(entries)), std::move(record)};
}

Rational DefaultAlpha(const Rational& eps) {
  if (eps <= 0) throw UsageError("eps must be positive");
  return LimitDenominator(SqrtApprox(eps), PowerOfTwo(16));
}

namespace {

// Replaces u_c outside the kept region by a fixed rule.
class CompletedGame final : public GameInstance {
 public:
  CompletedGame(const GameInstance& base, const VertexSet& kept, int coordinate, int split_bit)
      : base_(base), kept_(kept), coordinate_(coordinate), split_bit_(split_bit) {}

  int num_players() const override { return base_.num_players(); }
  Rational Utility(const Vertex& v, int i) const override {
    if (i != coordinate_ || kept_.contains(v)) return base_.Utility(v, i);
    if (split_bit_ < 0) return Rational(0);
    return Rational(v.bit(coordinate_) == split_bit_ ? 1 : 0);
  }

 private:
  const GameInstance& base_;
  const VertexSet& kept_;
  int coordinate_;
  // -1: zero everywhere outside.
  int split_bit_;
};

}  // namespace

OutsideWeightAudit AuditOutsideWeight(const SparseDistribution& x, const GameInstance& game,
                                      const VertexSet& queried, const Rational& eps,
                                      int coordinate) {
  CheckGameMatches(x, game);
  const VertexSet kept = FlipClosure(queried, coordinate);
  OutsideWeightAudit audit;
  audit.alpha = 0;
  for (std::uint32_t b : kept.bits()) {
    audit.alpha = std::max(audit.alpha, game.Utility(Vertex(kept.dim(), b), coordinate));
  }
  Rational outside_zero = 0, outside_one = 0;
  for (const auto& [bits, p] : x.entries()) {
    if (kept.contains_bits(bits)) continue;
    (((bits >> coordinate) & 1U) ? outside_one : outside_zero) += p;
  }
  audit.outside_weight = outside_zero + outside_one;
  audit.bound = 2 * (audit.alpha + eps);
  audit.bound_violated = audit.outside_weight > audit.bound;
  audit.deviation_bit = outside_zero >= outside_one ? 1 : 0;

  const CompletedGame zeroed(game, kept, coordinate, -1);
  const CompletedGame split(game, kept, coordinate, audit.deviation_bit);
  audit.regret_zeroed = Regret(x, zeroed, coordinate, audit.deviation_bit);
  audit.regret_split = Regret(x, split, coordinate, audit.deviation_bit);
  audit.violation_found = audit.regret_zeroed > eps || audit.regret_split > eps;
  return audit;
}

}  // namespace corrquery
