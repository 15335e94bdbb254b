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

#ifndef CORRQUERY_GAMES_H_
#define CORRQUERY_GAMES_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "corrquery/hypercube.h"
#include "corrquery/labeling.h"
#include "corrquery/random.h"
#include "corrquery/rational.h"

namespace corrquery {

inline constexpr int kMaxTableDimension = 20;

// n-player bi-strategy game with utilities u_i : {0,1}^n -> [0,1].
class GameInstance {
 public:
  virtual ~GameInstance() = default;

  virtual int num_players() const = 0;
  // u_i(v); player i is 0-based.
  virtual Rational Utility(const Vertex& v, int i) const = 0;
  // (u_1(v), ..., u_n(v)).
  virtual std::vector<Rational> Utilities(const Vertex& v) const;

 protected:
  void CheckProfile(const Vertex& v) const;
};

using GamePtr = std::shared_ptr<const GameInstance>;

// Dense table: all utilities share one positive denominator.
class TableGame final : public GameInstance {
 public:
  TableGame(int n, std::vector<std::int64_t> numerators, std::int64_t denominator);

  // utility(v, i) for every profile and player; the common denominator must
  // fit in 64 bits.
  static TableGame FromFunction(int n, const std::function<Rational(const Vertex&, int)>& utility);

  int num_players() const override { return n_; }
  Rational Utility(const Vertex& v, int i) const override;

  std::int64_t denominator() const { return denominator_; }
  std::int64_t numerator(std::uint32_t profile, int i) const {
    return numerators_[static_cast<std::size_t>(profile) * static_cast<std::size_t>(n_) +
                       static_cast<std::size_t>(i)];
  }

 private:
  int n_;
  // Row-major by profile: numerators_[profile * n + i].
  std::vector<std::int64_t> numerators_;
  std::int64_t denominator_;
};

// Win-lose game built from a complete +-1 labeling: u_i(v) = 1 iff
// R(v, v^{(i)}) = +1, so u_i(v) - u_i(v^{(i)}) = R(v, v^{(i)}).
class ApproximateSinkGame final : public GameInstance {
 public:
  explicit ApproximateSinkGame(std::shared_ptr<const EdgeLabeling> labeling);

  int num_players() const override { return labeling_->dim(); }
  Rational Utility(const Vertex& v, int i) const override;
  std::vector<Rational> Utilities(const Vertex& v) const override;
  const EdgeLabeling& labeling() const { return *labeling_; }

 private:
  std::shared_ptr<const EdgeLabeling> labeling_;
};

// Game built from an integer labeling with m = max |R|:
// u_i(v) = max(R(v, v^{(i)}), 0) / m, so u_i(v) - u_i(v^{(i)}) = R(v, v^{(i)}) / m.
// Identically zero when m = 0.
class NonNegativeVertexGame final : public GameInstance {
 public:
  explicit NonNegativeVertexGame(std::shared_ptr<const EdgeLabeling> labeling);

  int num_players() const override { return labeling_->dim(); }
  Rational Utility(const Vertex& v, int i) const override;
  std::vector<Rational> Utilities(const Vertex& v) const override;
  const EdgeLabeling& labeling() const { return *labeling_; }
  const BigInt& scale() const { return max_label_; }

 private:
  std::shared_ptr<const EdgeLabeling> labeling_;
  BigInt max_label_;
};

// u'_i(v) = alpha * u_i(v).
class ScaledGame final : public GameInstance {
 public:
  ScaledGame(GamePtr base, Rational alpha);

  int num_players() const override { return base_->num_players(); }
  Rational Utility(const Vertex& v, int i) const override;
  std::vector<Rational> Utilities(const Vertex& v) const override;

 private:
  GamePtr base_;
  Rational alpha_;
};

GamePtr GameFromApproximateSink(std::shared_ptr<const EdgeLabeling> labeling);
GamePtr GameFromNonNegativeVertex(std::shared_ptr<const EdgeLabeling> labeling);

// Each u_i(v) uniform on {0, 1/(2^t - 1), ..., 1}; all zero for t = 0.
TableGame RandomGame(int n, int bits, Rng& rng);

TableGame ConstantGame(int n, const Rational& value);
// u_1 = 1 iff the two players match, u_2 = 1 - u_1.
TableGame MatchingPennies();
// u_1 = u_2 = 1 iff the two players match.
TableGame CoordinationGame();
// u_i(v) = v_i: playing 1 is dominant for everybody.
TableGame DominantStrategyGame(int n);

// Ordered record of the profiles an algorithm queried.
class QueryTranscript {
 public:
  explicit QueryTranscript(int n, bool record_answers = false);

  int dim() const { return n_; }
  std::size_t query_count() const { return queries_.size(); }
  std::span<const std::uint32_t> queries() const { return queries_; }
  bool records_answers() const { return record_answers_; }
  // Empty unless answers are recorded.
  const std::vector<std::vector<Rational>>& answers() const { return answers_; }

  void Record(const Vertex& v, const std::vector<Rational>& answer);
  // Records a query whose answer is not a utility tuple (labeling searches).
  void Record(const Vertex& v);
  void ChargeSupport(std::size_t support_size);

  std::size_t support_size_charged() const { return support_size_; }
  // Queries made plus the size of the output support.
  std::size_t cost() const { return queries_.size() + support_size_; }

  VertexSet QueriedSet() const;

 private:
  int n_;
  bool record_answers_;
  std::vector<std::uint32_t> queries_;
  std::vector<std::vector<Rational>> answers_;
  std::size_t support_size_ = 0;
};

// Black-box access to a game. Every query is charged, repeats included.
class GameOracle {
 public:
  explicit GameOracle(const GameInstance& game, bool record_answers = false);

  int num_players() const { return game_.num_players(); }
  std::vector<Rational> Query(const Vertex& v);

  const QueryTranscript& transcript() const { return transcript_; }
  QueryTranscript& transcript() { return transcript_; }

 private:
  const GameInstance& game_;
  QueryTranscript transcript_;
};

}  // namespace corrquery

#endif  // CORRQUERY_GAMES_H_
