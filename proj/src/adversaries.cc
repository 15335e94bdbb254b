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

#include "corrquery/adversaries.h"

#include <algorithm>
#include <bit>
#include <utility>

#include "corrquery/errors.h"

namespace corrquery {

SinkAdversary::SinkAdversary(int n)
    : n_(n), committed_(n, LabelingKind::kApproximateSink, DefaultLabel::kUndefined) {}

std::vector<int> SinkAdversary::Query(const Vertex& v) {
  if (v.dim() != n_) throw UsageError("query dimension does not match adversary");
  std::vector<int> answer(static_cast<std::size_t>(n_));
  for (int i = 0; i < n_; ++i) {
    if (!committed_.IsStored(v, i)) committed_.Set(v, i, -1);
    answer[static_cast<std::size_t>(i)] = static_cast<int>(committed_.Label(v, i).get_si());
  }
  queried_.push_back(v);
  answers_.push_back(answer);
  return answer;
}

EdgeLabeling SinkAdversary::Finalize() const {
  EdgeLabeling out(n_, LabelingKind::kApproximateSink, DefaultLabel::kOrientUpward);
  for (const auto& edge : committed_.SortedEdges()) {
    out.Set(edge.lower, edge.coordinate, edge.value);
  }
  return out;
}

bool ReplayConsistent(const SinkAdversary& adversary, const EdgeLabeling& labeling) {
  LabelingSinkOracle replay(labeling);
  for (std::size_t k = 0; k < adversary.queried().size(); ++k) {
    if (replay.Query(adversary.queried()[k]) != adversary.answers()[k]) return false;
  }
  return true;
}

PoliteSimulation::PoliteSimulation(ApproximateSinkOracle& base, const Rational& theta_closure,
                                   const Rational& theta_polite)
    : base_(base),
      theta_closure_(theta_closure),
      theta_polite_(theta_polite),
      polite_limit_(0),
      closure_(base.dim(), theta_closure),
      issued_set_(base.dim()) {
  if (theta_closure_ < 0) throw UsageError("closure threshold must be non-negative");
  if (theta_polite_ < 2 * theta_closure_) {
    throw UsageError("politeness threshold must be at least twice the closure threshold");
  }
  const BigInt limit = Floor(theta_polite_);
  polite_limit_ = limit >= base.dim() ? base.dim() : static_cast<int>(limit.get_si());
}

std::vector<int> PoliteSimulation::Query(const Vertex& q) {
  if (q.dim() != dim()) throw UsageError("query dimension does not match oracle");
  if (stalled_) throw InfeasibleError("polite simulation already stalled");
  ++inner_queries_;
  if (auto it = answers_.find(q.bits()); it != answers_.end()) return it->second;

  std::vector<std::uint32_t> fresh;
  for (const Vertex& v : closure_.Add(q)) fresh.push_back(v.bits());
  // Each absorbed vertex may have as many earlier neighbors inside the fresh
  // batch as its politeness allowance leaves after its already-issued ones.
  std::vector<Vertex> order;
  try {
    order = PeelOrder(dim(), std::move(fresh), [this](const Vertex& v) {
      return polite_limit_ - issued_set_.NeighborsInside(v);
    });
  } catch (const InfeasibleError&) {
    stalled_ = true;
    throw;
  }
  for (const Vertex& v : order) {
    const int prior = issued_set_.NeighborsInside(v);
    if (Rational(prior) > theta_polite_) ++violations_;
    prior_neighbors_.push_back(prior);
    issued_.push_back(v);
    issued_set_.insert(v);
    answers_.emplace(v.bits(), base_.Query(v));
  }
  return answers_.at(q.bits());
}

HtpReferee::HtpReferee(Path path, std::size_t reveal_quota, HtpFrontierRule rule)
    : path_(std::move(path)), quota_(reveal_quota), rule_(rule) {
  if (quota_ == 0) throw UsageError("reveal quota must be positive");
  const auto bits = path_.bits();
  for (std::size_t j = 0; j < bits.size(); ++j) last_position_[bits[j]] = j;
}

HtpReferee::StepOutcome HtpReferee::Step(const Vertex& q) {
  if (won_) throw UsageError("the game is already won");
  if (q.dim() != dim()) throw UsageError("query dimension does not match the path");
  ++step_;
  StepOutcome outcome;
  const std::size_t before = revealed_upto_;
  revealed_upto_ = std::min(step_ * quota_, path_.steps());
  outcome.revealed_first = before;
  outcome.revealed_last = revealed_upto_;
  const std::size_t frontier = rule_ == HtpFrontierRule::kAfterReveal ? revealed_upto_ : before;
  if (auto it = last_position_.find(q.bits()); it != last_position_.end()) {
    outcome.win = it->second > frontier;
  }
  won_ = outcome.win;
  return outcome;
}

Rational RandomProberWinProbability(const Path& path, std::size_t reveal_quota,
                                    std::size_t budget, HtpFrontierRule rule) {
  if (reveal_quota == 0) throw UsageError("reveal quota must be positive");
  std::unordered_map<std::uint32_t, std::size_t> last_position;
  const auto bits = path.bits();
  for (std::size_t j = 0; j < bits.size(); ++j) last_position[bits[j]] = j;
  std::vector<std::size_t> lasts;
  lasts.reserve(last_position.size());
  for (const auto& [v, j] : last_position) lasts.push_back(j);
  std::sort(lasts.begin(), lasts.end());

  const Rational cube_size(PowerOfTwo(path.dim()));
  const std::size_t length = path.steps();
  Rational miss_all(1);
  for (std::size_t t = 1; t <= budget; ++t) {
    const std::size_t after = std::min(t * reveal_quota, length);
    const std::size_t frontier =
        rule == HtpFrontierRule::kAfterReveal ? after : std::min((t - 1) * reveal_quota, length);
    const auto hidden = static_cast<unsigned long>(
        lasts.end() - std::upper_bound(lasts.begin(), lasts.end(), frontier));
    if (hidden == 0) break;
    miss_all *= 1 - Rational(hidden) / cube_size;
  }
  return 1 - miss_all;
}

std::vector<BigInt> PathLabelsFromPrefix(std::span<const std::uint32_t> prefix, int n,
                                         const Vertex& v) {
  if (prefix.empty()) throw UsageError("empty prefix");
  if (v.dim() != n) throw UsageError("dimension mismatch");
  std::vector<BigInt> labels(static_cast<std::size_t>(n), BigInt(0));
  for (std::size_t j = 1; j < prefix.size(); ++j) {
    const std::uint32_t from = prefix[j - 1];
    const std::uint32_t to = prefix[j];
    const int i = std::countr_zero(from ^ to);
    BigInt step;
    mpz_set_ui(step.get_mpz_t(), static_cast<unsigned long>(j));
    // Step j adds -j to R(from, to), i.e. +j to R(to, from).
    if (from == v.bits()) labels[static_cast<std::size_t>(i)] -= step;
    if (to == v.bits()) labels[static_cast<std::size_t>(i)] += step;
  }
  return labels;
}

}  // namespace corrquery
