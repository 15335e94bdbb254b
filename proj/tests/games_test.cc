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

#include "corrquery/games.h"

#include <gtest/gtest.h>

#include "corrquery/errors.h"
#include "corrquery/random.h"

namespace corrquery {
namespace {

Vertex V(const char* bits) { return VertexFromBitString(bits); }

TEST(TableGameTest, MatchingPenniesTable) {
  const TableGame g = MatchingPennies();
  EXPECT_EQ(g.Utility(V("00"), 0), 1);
  EXPECT_EQ(g.Utility(V("00"), 1), 0);
  EXPECT_EQ(g.Utility(V("10"), 0), 0);
  EXPECT_EQ(g.Utility(V("10"), 1), 1);
  EXPECT_EQ(g.Utilities(V("11")), (std::vector<Rational>{1, 0}));
}

TEST(TableGameTest, RejectsMalformedTables) {
  EXPECT_THROW(TableGame(2, {0, 0, 0}, 1), UsageError);
  EXPECT_THROW(TableGame(1, {0, 2}, 1), UsageError);
  EXPECT_THROW(TableGame(1, {0, 0}, 0), UsageError);
  EXPECT_THROW(TableGame(1, {-1, 0}, 1), UsageError);
  const TableGame g(1, {1, 2}, 4);
  EXPECT_EQ(g.Utility(V("1"), 0), ParseRational("1/2"));
  EXPECT_THROW(g.Utility(V("10"), 0), UsageError);
  EXPECT_THROW(g.Utility(V("1"), 1), UsageError);
}

TEST(TableGameTest, FromFunctionRoundTripsRationals) {
  const TableGame g = TableGame::FromFunction(3, [](const Vertex& v, int i) -> Rational {
    Rational u(static_cast<long>(v.bits() + 1), static_cast<long>(8 + i));
    u.canonicalize();
    return u / 2;
  });
  for (std::uint32_t b = 0; b < 8; ++b) {
    for (int i = 0; i < 3; ++i) {
      Rational expected(static_cast<long>(b + 1), static_cast<long>(2 * (8 + i)));
      expected.canonicalize();
      EXPECT_EQ(g.Utility(Vertex(3, b), i), expected);
    }
  }
}

TEST(RandomGameTest, UtilitiesOnTheGridAndInRange) {
  Rng rng(4);
  const TableGame g = RandomGame(5, 3, rng);
  EXPECT_EQ(g.denominator(), 7);
  for (std::uint32_t b = 0; b < 32; ++b) {
    for (int i = 0; i < 5; ++i) {
      EXPECT_GE(g.numerator(b, i), 0);
      EXPECT_LE(g.numerator(b, i), 7);
    }
  }
  Rng rng2(4);
  const TableGame h = RandomGame(5, 3, rng2);
  for (std::uint32_t b = 0; b < 32; ++b) EXPECT_EQ(g.Utilities(Vertex(5, b)), h.Utilities(Vertex(5, b)));
  EXPECT_THROW(RandomGame(21, 3, rng), CapacityError);
  EXPECT_THROW(RandomGame(3, 63, rng), UsageError);
  EXPECT_EQ(RandomGame(2, 0, rng).Utility(V("11"), 1), 0);
}

TEST(ApproximateSinkGameTest, DifferenceEqualsLabelEverywhere) {
  Rng rng(8);
  for (int n = 1; n <= 7; ++n) {
    auto r = std::make_shared<EdgeLabeling>(RandomApproximateSinkLabeling(n, rng));
    const GamePtr g = GameFromApproximateSink(r);
    for (std::uint32_t b = 0; b < (1U << n); ++b) {
      const Vertex v(n, b);
      for (int i = 0; i < n; ++i) {
        const Rational diff = g->Utility(v, i) - g->Utility(Flip(v, i), i);
        EXPECT_EQ(diff, Rational(r->Label(v, i)));
        EXPECT_TRUE(g->Utility(v, i) == 0 || g->Utility(v, i) == 1);
      }
    }
  }
}

TEST(ApproximateSinkGameTest, PlayerPrefersTheEndpointTheEdgePointsInto) {
  auto r = std::make_shared<EdgeLabeling>(2, LabelingKind::kApproximateSink,
                                          DefaultLabel::kUndefined);
  r->Set(V("00"), 0, 1);   // player 1's edge points into 00
  r->Set(V("00"), 1, -1);  // player 2's edge points into 01
  r->Set(V("10"), 1, 1);
  r->Set(V("01"), 0, 1);
  const ApproximateSinkGame g(r);
  EXPECT_EQ(g.Utility(V("00"), 0), 1);
  EXPECT_EQ(g.Utility(V("10"), 0), 0);
  EXPECT_EQ(g.Utility(V("00"), 1), 0);
  EXPECT_EQ(g.Utility(V("01"), 1), 1);
}

TEST(NonNegativeVertexGameTest, DifferenceIsLabelOverScale) {
  Rng rng(12);
  for (int n = 1; n <= 6; ++n) {
    const PathInstance inst = MakeHamiltonianPathInstance(n, DefaultSuffixSteps(n), rng);
    auto r = std::make_shared<EdgeLabeling>(inst.labeling);
    const NonNegativeVertexGame g(r);
    const BigInt m = MaxAbsLabel(*r);
    EXPECT_EQ(g.scale(), m);
    for (std::uint32_t b = 0; b < (1U << n); ++b) {
      const Vertex v(n, b);
      for (int i = 0; i < n; ++i) {
        const Rational u = g.Utility(v, i);
        EXPECT_GE(u, 0);
        EXPECT_LE(u, 1);
        Rational expected(r->Label(v, i), m);
        expected.canonicalize();
        EXPECT_EQ(u - g.Utility(Flip(v, i), i), expected);
      }
    }
  }
}

TEST(NonNegativeVertexGameTest, ZeroLabelingGivesZeroGame) {
  auto r = std::make_shared<EdgeLabeling>(3, LabelingKind::kNonNegativeVertex, DefaultLabel::kZero);
  const NonNegativeVertexGame g(r);
  for (std::uint32_t b = 0; b < 8; ++b) EXPECT_EQ(g.Utilities(Vertex(3, b)), std::vector<Rational>(3));
}

TEST(ScaledGameTest, ScalesEveryUtility) {
  auto base = std::make_shared<TableGame>(MatchingPennies());
  const ScaledGame g(base, ParseRational("1/3"));
  EXPECT_EQ(g.Utility(V("00"), 0), ParseRational("1/3"));
  EXPECT_EQ(g.Utilities(V("01")), (std::vector<Rational>{0, ParseRational("1/3")}));
  EXPECT_THROW(ScaledGame(base, Rational(2)), UsageError);
  EXPECT_THROW(ScaledGame(base, Rational(-1)), UsageError);
}

TEST(StandardGamesTest, Examples) {
  EXPECT_EQ(CoordinationGame().Utilities(V("11")), (std::vector<Rational>{1, 1}));
  EXPECT_EQ(CoordinationGame().Utilities(V("10")), (std::vector<Rational>{0, 0}));
  EXPECT_EQ(DominantStrategyGame(3).Utilities(V("101")), (std::vector<Rational>{1, 0, 1}));
  EXPECT_EQ(ConstantGame(2, ParseRational("2/5")).Utility(V("01"), 1), ParseRational("2/5"));
}

TEST(GameOracleTest, ChargesEveryQueryIncludingRepeats) {
  const TableGame g = MatchingPennies();
  GameOracle oracle(g, /*record_answers=*/true);
  EXPECT_EQ(oracle.Query(V("00")), (std::vector<Rational>{1, 0}));
  oracle.Query(V("00"));
  oracle.Query(V("10"));
  const QueryTranscript& t = oracle.transcript();
  EXPECT_EQ(t.query_count(), 3u);
  EXPECT_EQ(t.QueriedSet().size(), 2u);
  ASSERT_EQ(t.answers().size(), 3u);
  EXPECT_EQ(t.answers()[2], (std::vector<Rational>{0, 1}));
  EXPECT_THROW(oracle.Query(V("000")), UsageError);
}

TEST(QueryTranscriptTest, CostAddsSupport) {
  QueryTranscript t(2);
  t.Record(V("01"));
  t.Record(V("11"));
  t.ChargeSupport(5);
  EXPECT_EQ(t.cost(), 7u);
  EXPECT_TRUE(t.answers().empty());
  EXPECT_THROW(t.Record(V("1")), UsageError);
}

}  // namespace
}  // namespace corrquery
