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

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "corrquery/errors.h"
#include "corrquery/random.h"
#include "corrquery/solvers.h"

namespace corrquery {

std::string ToString(SinkSearch algorithm) {
  switch (algorithm) {
    case SinkSearch::kGreedySink:
      return "greedy_sink";
    case SinkSearch::kRandomProbe:
      return "random_probe";
    case SinkSearch::kWalkProbe:
      return "walk_probe";
    case SinkSearch::kNeighborhoodSweep:
      return "neighborhood_sweep";
  }
  return "unknown";
}

SinkSearch ParseSinkSearch(const std::string& name) {
  for (SinkSearch a : {SinkSearch::kGreedySink, SinkSearch::kRandomProbe, SinkSearch::kWalkProbe,
                       SinkSearch::kNeighborhoodSweep}) {
    if (ToString(a) == name) return a;
  }
  throw UsageError("unknown search algorithm '" + name + "'");
}

namespace {

// Proposes the next vertex to query and learns from answers.
class QueryPolicy {
 public:
  virtual ~QueryPolicy() = default;
  virtual Vertex Next() = 0;
  virtual void Observe(const Vertex& v, const std::vector<int>& labels) {
    (void)v;
    (void)labels;
  }
};

class GreedySinkPolicy final : public QueryPolicy {
 public:
  explicit GreedySinkPolicy(int n) : n_(n) {}

  Vertex Next() override {
    if (queried_.empty()) return Vertex(n_, 0);
    if (!ranking_.empty()) return Vertex(n_, ranking_.begin()->second);
    // Nothing points anywhere new: lowest unqueried vertex.
    std::uint32_t b = 0;
    while (queried_.count(b)) ++b;
    return Vertex(n_, b);
  }

  void Observe(const Vertex& v, const std::vector<int>& labels) override {
    if (!queried_.insert(v.bits()).second) return;
    if (auto it = in_count_.find(v.bits()); it != in_count_.end()) {
      ranking_.erase({-it->second, v.bits()});
      in_count_.erase(it);
    }
    for (int i = 0; i < n_; ++i) {
      // R(v, w) = -1: the edge points out of v, into w.
      if (labels[static_cast<std::size_t>(i)] != -1) continue;
      const std::uint32_t w = v.bits() ^ (1U << i);
      if (queried_.count(w)) continue;
      int& count = in_count_[w];
      if (count > 0) ranking_.erase({-count, w});
      ++count;
      ranking_.emplace(-count, w);
    }
  }

 private:
  int n_;
  std::unordered_set<std::uint32_t> queried_;
  std::unordered_map<std::uint32_t, int> in_count_;
  // (-observed in-count, bits): begin() is the strongest candidate.
  std::set<std::pair<int, std::uint32_t>> ranking_;
};

class RandomProbePolicy final : public QueryPolicy {
 public:
  RandomProbePolicy(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vertex Next() override {
    return Vertex(n_, static_cast<std::uint32_t>(UniformBelow(rng_, std::uint64_t{1} << n_)));
  }

 private:
  int n_;
  Rng rng_;
};

class WalkProbePolicy final : public QueryPolicy {
 public:
  WalkProbePolicy(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vertex Next() override {
    if (!current_) {
      current_ = static_cast<std::uint32_t>(UniformBelow(rng_, std::uint64_t{1} << n_));
    } else {
      *current_ ^= 1U << UniformBelow(rng_, static_cast<std::uint64_t>(n_));
    }
    return Vertex(n_, *current_);
  }

 private:
  int n_;
  Rng rng_;
  std::optional<std::uint32_t> current_;
};

class NeighborhoodSweepPolicy final : public QueryPolicy {
 public:
  NeighborhoodSweepPolicy(int n, std::uint64_t seed) : n_(n), rng_(seed) {}
  Vertex Next() override {
    if (position_ == 0) {
      center_ = static_cast<std::uint32_t>(UniformBelow(rng_, std::uint64_t{1} << n_));
    }
    const std::uint32_t bits =
        position_ == 0 ? center_ : center_ ^ (1U << static_cast<unsigned>(position_ - 1));
    position_ = (position_ + 1) % (n_ + 1);
    return Vertex(n_, bits);
  }

 private:
  int n_;
  Rng rng_;
  std::uint32_t center_ = 0;
  int position_ = 0;
};

std::unique_ptr<QueryPolicy> MakePolicy(SinkSearch algorithm, int n, std::uint64_t seed) {
  switch (algorithm) {
    case SinkSearch::kGreedySink:
      return std::make_unique<GreedySinkPolicy>(n);
    case SinkSearch::kRandomProbe:
      return std::make_unique<RandomProbePolicy>(n, seed);
    case SinkSearch::kWalkProbe:
      return std::make_unique<WalkProbePolicy>(n, seed);
    case SinkSearch::kNeighborhoodSweep:
      return std::make_unique<NeighborhoodSweepPolicy>(n, seed);
  }
  throw UsageError("unknown search algorithm");
}

}  // namespace

SolverRun RunSinkSearch(SinkSearch algorithm, ApproximateSinkOracle& oracle, std::size_t budget,
                        const Rational& threshold, std::uint64_t seed) {
  const int n = oracle.dim();
  auto policy = MakePolicy(algorithm, n, seed);
  SolverRun run{ToString(algorithm), std::nullopt, std::nullopt, QueryTranscript(n), false, seed, 0};
  for (std::size_t q = 0; q < budget; ++q) {
    const Vertex v = policy->Next();
    const std::vector<int> labels = oracle.Query(v);
    run.transcript.Record(v);
    ++run.steps;
    policy->Observe(v, labels);
    if (IsApproximateSink(ComputeInDegree(labels), threshold)) {
      run.vertex = v;
      run.succeeded = true;
      break;
    }
  }
  return run;
}

SolverRun TailChaser(HtpReferee& referee, std::size_t budget) {
  const int n = referee.dim();
  SolverRun run{"tail_chaser", std::nullopt, std::nullopt, QueryTranscript(n), false, 0, 0};
  while (!referee.end_revealed() && !referee.won() && run.steps < budget) {
    const Vertex q(n, referee.revealed().back());
    run.transcript.Record(q);
    ++run.steps;
    if (referee.Step(q).win) run.vertex = q;
  }
  if (referee.end_revealed() && !run.vertex) run.vertex = Vertex(n, referee.revealed().back());
  // Either an HTP win or the path end, which the referee confirms.
  run.succeeded = referee.won() ||
                  (referee.end_revealed() && run.vertex == referee.hidden_path().back());
  return run;
}

SolverRun RandomHtpProber(HtpReferee& referee, std::size_t budget, std::uint64_t seed) {
  const int n = referee.dim();
  Rng rng(seed);
  SolverRun run{"random_prober", std::nullopt, std::nullopt, QueryTranscript(n), false, seed, 0};
  while (!referee.won() && run.steps < budget) {
    const Vertex q(n, static_cast<std::uint32_t>(UniformBelow(rng, std::uint64_t{1} << n)));
    run.transcript.Record(q);
    ++run.steps;
    if (referee.Step(q).win) run.vertex = q;
  }
  run.succeeded = referee.won();
  return run;
}

SolverRun TailChaser(NonNegativeVertexOracle& oracle, const Vertex& start, std::size_t budget) {
  const int n = oracle.dim();
  SolverRun run{"tail_chaser", std::nullopt, std::nullopt, QueryTranscript(n), false, 0, 0};
  // Label mass of the steps reconstructed so far, keyed like R(lower, i).
  EdgeLabeling known(n, LabelingKind::kPath, DefaultLabel::kZero);
  Vertex current = start;
  while (run.steps < budget) {
    const std::vector<BigInt> labels = oracle.Query(current);
    run.transcript.Record(current);
    ++run.steps;
    BigInt out_weight = 0;
    for (const BigInt& r : labels) out_weight += r;
    if (out_weight >= 0) {
      run.vertex = current;
      break;
    }
    // Step j + 1 leaves v_j with label -(j + 1) unless a later step crosses
    // the same edge; prefer an exact match, else the most negative residual.
    const BigInt next_step(static_cast<unsigned long>(run.steps));
    int chosen = -1;
    BigInt best;
    for (int i = 0; i < n; ++i) {
      const BigInt residual = labels[static_cast<std::size_t>(i)] - known.Label(current, i);
      if (residual == -next_step) {
        chosen = i;
        break;
      }
      if (chosen < 0 || residual < best) {
        chosen = i;
        best = residual;
      }
    }
    known.Add(current, chosen, -next_step);
    current = Flip(current, chosen);
  }
  run.succeeded = run.vertex.has_value() && NonNegativeVertex(oracle.labeling(), *run.vertex);
  return run;
}

}  // namespace corrquery
