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

#include <limits>
#include <numeric>
#include <utility>

#include "corrquery/errors.h"

namespace corrquery {

std::vector<Rational> GameInstance::Utilities(const Vertex& v) const {
  CheckProfile(v);
  std::vector<Rational> out;
  out.reserve(static_cast<std::size_t>(num_players()));
  for (int i = 0; i < num_players(); ++i) out.push_back(Utility(v, i));
  return out;
}

void GameInstance::CheckProfile(const Vertex& v) const {
  if (v.dim() != num_players()) {
    throw UsageError("profile of dimension " + std::to_string(v.dim()) + " for a " +
                     std::to_string(num_players()) + "-player game");
  }
}

TableGame::TableGame(int n, std::vector<std::int64_t> numerators, std::int64_t denominator)
    : n_(n), numerators_(std::move(numerators)), denominator_(denominator) {
  CheckDimension(n);
  if (n > kMaxTableDimension) {
    throw CapacityError("dense game tables are limited to n <= " +
                        std::to_string(kMaxTableDimension));
  }
  if (denominator_ <= 0) throw UsageError("table denominator must be positive");
  if (numerators_.size() != (std::size_t{1} << n) * static_cast<std::size_t>(n)) {
    throw UsageError("table has the wrong number of entries");
  }
  for (std::int64_t num : numerators_) {
    if (num < 0 || num > denominator_) throw UsageError("utilities must lie in [0, 1]");
  }
}

TableGame TableGame::FromFunction(int n,
                                  const std::function<Rational(const Vertex&, int)>& utility) {
  CheckDimension(n);
  if (n > kMaxTableDimension) {
    throw CapacityError("dense game tables are limited to n <= " +
                        std::to_string(kMaxTableDimension));
  }
  const std::size_t profiles = std::size_t{1} << n;
  std::vector<Rational> values;
  values.reserve(profiles * static_cast<std::size_t>(n));
  BigInt common = 1;
  for (std::uint32_t b = 0; b < profiles; ++b) {
    for (int i = 0; i < n; ++i) {
      Rational u = utility(Vertex(n, b), i);
      mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), u.get_den_mpz_t());
      values.push_back(std::move(u));
    }
  }
  if (!common.fits_slong_p()) throw CapacityError("common utility denominator exceeds 64 bits");
  std::vector<std::int64_t> numerators;
  numerators.reserve(values.size());
  for (const Rational& u : values) {
    if (u < 0 || u > 1) throw UsageError("utilities must lie in [0, 1]");
    BigInt scaled = u.get_num() * (common / u.get_den());
    numerators.push_back(scaled.get_si());
  }
  return TableGame(n, std::move(numerators), common.get_si());
}

Rational TableGame::Utility(const Vertex& v, int i) const {
  CheckProfile(v);
  CheckPlayer(n_, i);
  Rational out(static_cast<long>(numerator(v.bits(), i)), static_cast<long>(denominator_));
  out.canonicalize();
  return out;
}

ApproximateSinkGame::ApproximateSinkGame(std::shared_ptr<const EdgeLabeling> labeling)
    : labeling_(std::move(labeling)) {}

Rational ApproximateSinkGame::Utility(const Vertex& v, int i) const {
  CheckProfile(v);
  const BigInt r = labeling_->Label(v, i);
  if (r == 1) return Rational(1);
  if (r == -1) return Rational(0);
  throw UsageError("approximate-sink labels must be +-1");
}

std::vector<Rational> ApproximateSinkGame::Utilities(const Vertex& v) const {
  return GameInstance::Utilities(v);
}

NonNegativeVertexGame::NonNegativeVertexGame(std::shared_ptr<const EdgeLabeling> labeling)
    : labeling_(std::move(labeling)), max_label_(MaxAbsLabel(*labeling_)) {}

Rational NonNegativeVertexGame::Utility(const Vertex& v, int i) const {
  CheckProfile(v);
  if (max_label_ == 0) return Rational(0);
  const BigInt r = labeling_->Label(v, i);
  if (r <= 0) return Rational(0);
  Rational out(r, max_label_);
  out.canonicalize();
  return out;
}

std::vector<Rational> NonNegativeVertexGame::Utilities(const Vertex& v) const {
  return GameInstance::Utilities(v);
}

ScaledGame::ScaledGame(GamePtr base, Rational alpha)
    : base_(std::move(base)), alpha_(std::move(alpha)) {
  if (alpha_ < 0 || alpha_ > 1) throw UsageError("scale must lie in [0, 1]");
}

Rational ScaledGame::Utility(const Vertex& v, int i) const {
  return Rational(alpha_ * base_->Utility(v, i));
}

std::vector<Rational> ScaledGame::Utilities(const Vertex& v) const {
  std::vector<Rational> out = base_->Utilities(v);
  for (Rational& u : out) u *= alpha_;
  return out;
}

GamePtr GameFromApproximateSink(std::shared_ptr<const EdgeLabeling> labeling) {
  return std::make_shared<ApproximateSinkGame>(std::move(labeling));
}

GamePtr GameFromNonNegativeVertex(std::shared_ptr<const EdgeLabeling> labeling) {
  return std::make_shared<NonNegativeVertexGame>(std::move(labeling));
}

TableGame RandomGame(int n, int bits, Rng& rng) {
  CheckDimension(n);
  if (n > kMaxTableDimension) {
    throw CapacityError("dense game tables are limited to n <= " +
                        std::to_string(kMaxTableDimension));
  }
  if (bits < 0 || bits > 62) throw UsageError("precision must be in [0, 62] bits");
  const std::int64_t denominator = bits == 0 ? 1 : (std::int64_t{1} << bits) - 1;
  const std::size_t entries = (std::size_t{1} << n) * static_cast<std::size_t>(n);
  std::vector<std::int64_t> numerators(entries, 0);
  if (bits > 0) {
    for (auto& num : numerators) {
      num = static_cast<std::int64_t>(UniformBelow(rng, static_cast<std::uint64_t>(denominator) + 1));
    }
  }
  return TableGame(n, std::move(numerators), denominator);
}

TableGame ConstantGame(int n, const Rational& value) {
  return TableGame::FromFunction(n, [&](const Vertex&, int) { return value; });
}

TableGame MatchingPennies() {
  return TableGame::FromFunction(2, [](const Vertex& v, int i) {
    const int match = v.bit(0) == v.bit(1) ? 1 : 0;
    return Rational(i == 0 ? match : 1 - match);
  });
}

TableGame CoordinationGame() {
  return TableGame::FromFunction(
      2, [](const Vertex& v, int) { return Rational(v.bit(0) == v.bit(1) ? 1 : 0); });
}

TableGame DominantStrategyGame(int n) {
  return TableGame::FromFunction(n, [](const Vertex& v, int i) { return Rational(v.bit(i)); });
}

QueryTranscript::QueryTranscript(int n, bool record_answers)
    : n_(n), record_answers_(record_answers) {
  CheckDimension(n);
}

void QueryTranscript::Record(const Vertex& v, const std::vector<Rational>& answer) {
  if (v.dim() != n_) throw UsageError("query dimension does not match transcript");
  queries_.push_back(v.bits());
  if (record_answers_) answers_.push_back(answer);
}

void QueryTranscript::Record(const Vertex& v) {
  if (v.dim() != n_) throw UsageError("query dimension does not match transcript");
  queries_.push_back(v.bits());
}

void QueryTranscript::ChargeSupport(std::size_t support_size) { support_size_ = support_size; }

VertexSet QueryTranscript::QueriedSet() const { return VertexSet(n_, queries_); }

GameOracle::GameOracle(const GameInstance& game, bool record_answers)
    : game_(game), transcript_(game.num_players(), record_answers) {}

std::vector<Rational> GameOracle::Query(const Vertex& v) {
  if (v.dim() != game_.num_players()) {
    throw UsageError("query of dimension " + std::to_string(v.dim()) + " to a " +
                     std::to_string(game_.num_players()) + "-player game");
  }
  std::vector<Rational> answer = game_.Utilities(v);
  transcript_.Record(v, answer);
  return answer;
}

}  // namespace corrquery
