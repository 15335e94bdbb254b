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

#include <gtest/gtest.h>

#include "corrquery/errors.h"
#include "corrquery/random.h"
#include "oracles.h"

namespace corrquery {
namespace {

Vertex V(const char* bits) { return VertexFromBitString(bits); }
Rational Q(const char* text) { return ParseRational(text); }

oracle::Utility UtilityOf(const GameInstance& game) {
  const int n = game.num_players();
  return [&game, n](std::uint32_t v, int i) { return game.Utility(Vertex(n, v), i); };
}

// Random distribution on a random support with denominators up to 2^8.
SparseDistribution RandomDistribution(int n, std::size_t support, Rng& rng) {
  std::map<std::uint32_t, std::uint64_t> counts;
  for (std::size_t k = 0; k < support; ++k) {
    counts[static_cast<std::uint32_t>(UniformBelow(rng, 1U << n))] += 1 + UniformBelow(rng, 255);
  }
  return SparseDistribution::FromCounts(n, counts);
}

TEST(SparseDistributionTest, Construction) {
  EXPECT_THROW(SparseDistribution(2, {{0, Q("1/2")}}), UsageError);
  EXPECT_THROW(SparseDistribution(2, {{0, Q("3/2")}, {1, Q("-1/2")}}), UsageError);
  EXPECT_THROW(SparseDistribution(2, {{4, Rational(1)}}), UsageError);
  const SparseDistribution x(2, {{0, Rational(1)}, {3, Rational(0)}});
  EXPECT_EQ(x.support_size(), 1u);
  EXPECT_EQ(x, SparseDistribution::PointMass(V("00")));
  const SparseDistribution u = SparseDistribution::FromCounts(2, {{1, 1}, {2, 3}});
  EXPECT_EQ(u.Probability(V("10")), Q("1/4"));
  EXPECT_EQ(u.Probability(V("01")), Q("3/4"));
  EXPECT_EQ(u.Probability(V("11")), 0);
  VertexSet s(2);
  s.insert(V("00"));
  s.insert(V("11"));
  EXPECT_EQ(SparseDistribution::Uniform(s).Probability(V("11")), Q("1/2"));
  EXPECT_EQ(SparseDistribution::Uniform(s).Support(), s);
}

TEST(RegretTest, MatchingPenniesPointMass) {
  const TableGame g = MatchingPennies();
  const auto x = SparseDistribution::PointMass(V("00"));
  EXPECT_EQ(Regret(x, g, 0, 1), -1);
  EXPECT_EQ(Regret(x, g, 1, 1), 1);
  EXPECT_EQ(Regret(x, g, 0, 0), 0);
  const RegretReport report = VerifyCorrelatedEquilibrium(x, g, Q("1/10"));
  EXPECT_FALSE(report.pass);
  EXPECT_EQ(report.max_regret, 1);
  EXPECT_EQ(report.regret(1, 1), 1);
}

TEST(RegretTest, MatchingPenniesUniformIsExact) {
  const TableGame g = MatchingPennies();
  VertexSet all(2);
  for (std::uint32_t b = 0; b < 4; ++b) all.insert(Vertex(2, b));
  const RegretReport report = VerifyCorrelatedEquilibrium(SparseDistribution::Uniform(all), g, 0);
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.max_regret, 0);
}

TEST(RegretTest, CoordinationPureEquilibria) {
  const TableGame g = CoordinationGame();
  EXPECT_TRUE(VerifyCorrelatedEquilibrium(SparseDistribution::PointMass(V("11")), g, 0).pass);
  EXPECT_TRUE(VerifyCorrelatedEquilibrium(SparseDistribution::PointMass(V("00")), g, 0).pass);
  const auto off = SparseDistribution::PointMass(V("10"));
  EXPECT_FALSE(VerifyCorrelatedEquilibrium(off, g, Q("99/100")).pass);
  EXPECT_TRUE(VerifyCorrelatedEquilibrium(off, g, 1).pass);
}

TEST(RegretTest, AgreesWithOracleOnRandomInstances) {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + static_cast<int>(UniformBelow(rng, 5));
    const TableGame g = RandomGame(n, 4, rng);
    const SparseDistribution x = RandomDistribution(n, 1 + UniformBelow(rng, 8), rng);
    const auto u = UtilityOf(g);
    for (int i = 0; i < n; ++i) {
      for (int b = 0; b < 2; ++b) EXPECT_EQ(Regret(x, g, i, b), oracle::Regret(x.entries(), u, i, b));
    }
    EXPECT_EQ(TotalRegretSum(x, g), oracle::SumOfAllRegrets(x.entries(), u, n));
  }
}

TEST(RegretTest, PassIsThresholdedOnMaxRegret) {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const TableGame g = RandomGame(3, 3, rng);
    const SparseDistribution x = RandomDistribution(3, 4, rng);
    const RegretReport r = VerifyCorrelatedEquilibrium(x, g, Q("1/10"));
    Rational max = r.regrets.front();
    for (const Rational& q : r.regrets) max = std::max(max, q);
    EXPECT_EQ(r.max_regret, max);
    EXPECT_EQ(r.pass, max <= Q("1/10"));
    EXPECT_EQ(VerifyCorrelatedEquilibrium(x, g, r.max_regret).pass, true);
  }
}

TEST(RegretTest, ScalingScalesRegret) {
  Rng rng(17);
  auto base = std::make_shared<TableGame>(RandomGame(4, 5, rng));
  const ScaledGame scaled(base, Q("1/3"));
  const SparseDistribution x = RandomDistribution(4, 6, rng);
  for (int i = 0; i < 4; ++i) {
    for (int b = 0; b < 2; ++b) EXPECT_EQ(Regret(x, scaled, i, b), Regret(x, *base, i, b) / 3);
  }
}

TEST(RegretTest, RejectsMismatchedDimensions) {
  EXPECT_THROW(Regret(SparseDistribution::PointMass(V("000")), MatchingPennies(), 0, 1),
               UsageError);
}

TEST(DeviationGainTest, EqualsLabelSumOnApproximateSinkGames) {
  Rng rng(6);
  for (int n = 1; n <= 6; ++n) {
    auto r = std::make_shared<EdgeLabeling>(RandomApproximateSinkLabeling(n, rng));
    const ApproximateSinkGame g(r);
    for (std::uint32_t b = 0; b < (1U << n); ++b) {
      const Vertex v(n, b);
      // u_i(v^{(i)}) - u_i(v) = -R(v, v^{(i)}).
      EXPECT_EQ(DeviationGain(g, v), Rational(-OutWeight(*r, v)));
      EXPECT_EQ(DeviationGain(g, v), ComputeInDegree(*r, v).incoming_sum);
    }
  }
}

TEST(ExtractWitnessTest, PicksSmallestGainAndThrowsAboveBound) {
  const TableGame g = DominantStrategyGame(2);
  const auto x = SparseDistribution::FromCounts(2, {{0, 1}, {1, 1}, {3, 1}});
  // Gains: 00 -> 2, 10 -> 0, 11 -> -2.
  EXPECT_EQ(ExtractWitness(x, g, 0), V("11"));
  EXPECT_EQ(ExtractWitness(x, g, -2), V("11"));
  EXPECT_THROW(ExtractWitness(x, g, -3), InfeasibleError);
  EXPECT_EQ(TotalRegretSum(x, g), 0);
}

TEST(ExtractWitnessTest, AveragingGuaranteesAWitness) {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(UniformBelow(rng, 4));
    const TableGame g = RandomGame(n, 3, rng);
    const SparseDistribution x = RandomDistribution(n, 5, rng);
    const Rational total = TotalRegretSum(x, g);
    const Vertex w = ExtractWitness(x, g, total);
    EXPECT_LE(DeviationGain(g, w), total);
    EXPECT_GT(x.Probability(w), 0);
  }
}

TEST(FlipClosureTest, Examples) {
  VertexSet q(3);
  q.insert(V("000"));
  q.insert(V("011"));
  const VertexSet c = FlipClosure(q, 0);
  EXPECT_EQ(c.size(), 4u);
  EXPECT_TRUE(c.contains(V("100")));
  EXPECT_TRUE(c.contains(V("111")));
  q.insert(V("100"));
  EXPECT_EQ(FlipClosure(q, 0).size(), 4u);
  EXPECT_EQ(FlipClosure(VertexSet(3), 1).size(), 0u);
}

TEST(CompactSupportTest, RenormalizesOntoKeptRegion) {
  const auto x = SparseDistribution::FromCounts(2, {{0, 1}, {1, 1}, {2, 2}});
  VertexSet q(2);
  q.insert(V("00"));
  const auto [y, record] = CompactSupport(x, q, Q("1/4"), Q("1/16"), 0);
  // Q' = {00, 10}; it holds 1/2 of the mass.
  EXPECT_EQ(record.beta, 2);
  EXPECT_EQ(y.Probability(V("00")), Q("1/2"));
  EXPECT_EQ(y.Probability(V("10")), Q("1/2"));
  EXPECT_EQ(y.support_size(), 2u);
  EXPECT_EQ(record.output_eps_bound, Q("1/4") + 4 * (Q("1/4") + Q("1/16")));
  EXPECT_TRUE(y.Support().IsSubsetOf(record.kept_region));
}

TEST(CompactSupportTest, Errors) {
  const auto x = SparseDistribution::PointMass(V("11"));
  VertexSet q(2);
  q.insert(V("00"));
  EXPECT_THROW(CompactSupport(x, q, Q("1/4"), 0, 0), InfeasibleError);
  EXPECT_THROW(CompactSupport(x, q, 0, 0, 0), UsageError);
  EXPECT_THROW(CompactSupport(x, q, 1, -1, 0), UsageError);
}

TEST(DefaultAlphaTest, ApproximatesSquareRoot) {
  EXPECT_EQ(DefaultAlpha(Q("1/4")), Q("1/2"));
  EXPECT_EQ(DefaultAlpha(Q("1/100")), Q("1/10"));
  const Rational a = DefaultAlpha(Q("1/10"));
  EXPECT_LE(abs(Rational(a * a - Q("1/10"))), Q("1/100000"));
  EXPECT_THROW(DefaultAlpha(0), UsageError);
}

// A game whose coordinate-0 utilities are replaced outside `kept` by `rule`,
// built independently of the library's completion.
TableGame Completion(const TableGame& g, const VertexSet& kept, int c, int rule) {
  return TableGame::FromFunction(g.num_players(), [&](const Vertex& v, int i) {
    if (i != c || kept.contains(v)) return g.Utility(v, i);
    if (rule < 0) return Rational(0);
    return Rational(v.bit(c) == rule ? 1 : 0);
  });
}

TEST(OutsideWeightAuditTest, HeavyOutsideMassAlwaysYieldsAViolation) {
  Rng rng(41);
  int heavy = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(UniformBelow(rng, 3));
    // Player 0 earns at most 1/8 anywhere.
    const TableGame g = TableGame::FromFunction(n, [&](const Vertex&, int i) {
      Rational u(static_cast<long>(UniformBelow(rng, 8)), i == 0 ? 56L : 7L);
      u.canonicalize();
      return u;
    });
    VertexSet q(n);
    for (std::size_t k = 0, m = UniformBelow(rng, 3); k < m; ++k) {
      q.insert(Vertex(n, static_cast<std::uint32_t>(UniformBelow(rng, 1U << n))));
    }
    const SparseDistribution x = RandomDistribution(n, 1 + UniformBelow(rng, 6), rng);
    const Rational eps = Q("1/64");
    const OutsideWeightAudit audit = AuditOutsideWeight(x, g, q, eps, 0);

    const VertexSet kept = FlipClosure(q, 0);
    Rational outside = 0;
    for (const auto& [b, p] : x.entries()) {
      if (!kept.contains_bits(b)) outside += p;
    }
    EXPECT_EQ(audit.outside_weight, outside);
    EXPECT_LE(audit.alpha, Q("1/8"));

    const TableGame zeroed = Completion(g, kept, 0, -1);
    const TableGame split = Completion(g, kept, 0, audit.deviation_bit);
    EXPECT_EQ(audit.regret_zeroed,
              oracle::Regret(x.entries(), UtilityOf(zeroed), 0, audit.deviation_bit));
    EXPECT_EQ(audit.regret_split,
              oracle::Regret(x.entries(), UtilityOf(split), 0, audit.deviation_bit));
    if (audit.bound_violated) {
      ++heavy;
      EXPECT_TRUE(audit.violation_found) << "trial " << trial;
    }
  }
  EXPECT_GT(heavy, 50);
}

}  // namespace
}  // namespace corrquery
