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

#include "corrquery/labeling.h"

#include <algorithm>
#include <cmath>

#include "corrquery/errors.h"

namespace corrquery {

EdgeLabeling::EdgeLabeling(int n, LabelingKind kind, DefaultLabel default_label)
    : n_(n), kind_(kind), default_label_(default_label) {
  CheckDimension(n);
}

std::pair<std::uint32_t, int> EdgeLabeling::Orient(const Vertex& v, int i) const {
  if (v.dim() != n_) throw UsageError("vertex dimension does not match labeling");
  CheckPlayer(n_, i);
  const std::uint32_t mask = 1U << i;
  return (v.bits() & mask) ? std::pair{v.bits() ^ mask, -1} : std::pair{v.bits(), 1};
}

std::optional<BigInt> EdgeLabeling::Find(const Vertex& v, int i) const {
  const auto [lower, sign] = Orient(v, i);
  if (auto it = labels_.find(Key(lower, i)); it != labels_.end()) {
    return sign > 0 ? it->second : BigInt(-it->second);
  }
  switch (default_label_) {
    case DefaultLabel::kZero:
      return BigInt(0);
    case DefaultLabel::kOrientUpward:
      return BigInt(-sign);
    case DefaultLabel::kUndefined:
      break;
  }
  return std::nullopt;
}

BigInt EdgeLabeling::Label(const Vertex& v, int i) const {
  auto value = Find(v, i);
  if (!value) {
    throw IncompleteLabelingError("edge (" + ToBitString(v) + ", " + std::to_string(i) +
                                  ") has no label");
  }
  return *std::move(value);
}

bool EdgeLabeling::IsDefined(const Vertex& v, int i) const { return Find(v, i).has_value(); }

bool EdgeLabeling::IsStored(const Vertex& v, int i) const {
  const auto [lower, sign] = Orient(v, i);
  return labels_.count(Key(lower, i)) != 0;
}

void EdgeLabeling::Set(const Vertex& v, int i, const BigInt& value) {
  const auto [lower, sign] = Orient(v, i);
  labels_[Key(lower, i)] = sign > 0 ? value : BigInt(-value);
}

void EdgeLabeling::Add(const Vertex& v, int i, const BigInt& delta) {
  const auto [lower, sign] = Orient(v, i);
  auto [it, inserted] = labels_.try_emplace(Key(lower, i), 0);
  if (inserted && default_label_ == DefaultLabel::kOrientUpward) it->second = -1;
  if (sign > 0) {
    it->second += delta;
  } else {
    it->second -= delta;
  }
}

std::vector<EdgeLabeling::StoredEdge> EdgeLabeling::SortedEdges() const {
  std::vector<std::uint64_t> keys;
  keys.reserve(labels_.size());
  for (const auto& [key, value] : labels_) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  std::vector<StoredEdge> out;
  out.reserve(keys.size());
  for (std::uint64_t key : keys) {
    out.push_back(StoredEdge{Vertex(n_, static_cast<std::uint32_t>(key >> 5)),
                             static_cast<int>(key & 31U), labels_.at(key)});
  }
  return out;
}

EdgeLabeling LabelFromPath(const Path& path) {
  EdgeLabeling labeling(path.dim(), LabelingKind::kPath, DefaultLabel::kZero);
  for (std::size_t j = 1; j < path.size(); ++j) {
    BigInt step;
    mpz_set_ui(step.get_mpz_t(), static_cast<unsigned long>(j));
    labeling.Add(path.at(j - 1), path.FlippedCoordinate(j), -step);
  }
  return labeling;
}

EdgeLabeling RandomApproximateSinkLabeling(int n, Rng& rng) {
  if (n > 20) throw CapacityError("complete labelings limited to n <= 20");
  EdgeLabeling labeling(n, LabelingKind::kApproximateSink, DefaultLabel::kUndefined);
  for (std::uint32_t b = 0; b < (1U << n); ++b) {
    for (int i = 0; i < n; ++i) {
      if ((b >> i) & 1U) continue;
      labeling.Set(Vertex(n, b), i, UniformBelow(rng, 2) ? 1 : -1);
    }
  }
  return labeling;
}

BigInt OutWeight(const EdgeLabeling& labeling, const Vertex& v) {
  BigInt total = 0;
  for (int i = 0; i < labeling.dim(); ++i) total += labeling.Label(v, i);
  return total;
}

BigInt PathOutWeightClosedForm(const Path& path, const Vertex& v) {
  if (v.dim() != path.dim()) throw UsageError("dimension mismatch");
  const auto bits = path.bits();
  const long visits = std::count(bits.begin(), bits.end() - 1, v.bits());
  BigInt out = -visits;
  if (path.back() == v) {
    BigInt steps;
    mpz_set_ui(steps.get_mpz_t(), static_cast<unsigned long>(path.steps()));
    out += steps;
  }
  return out;
}

InDegree ComputeInDegree(const std::vector<int>& incident_labels) {
  int in_degree = 0;
  for (int r : incident_labels) {
    if (r != 1 && r != -1) throw UsageError("approximate-sink labels must be +-1");
    in_degree += r == 1 ? 1 : 0;
  }
  const int n = static_cast<int>(incident_labels.size());
  return InDegree{in_degree, n - 2 * in_degree};
}

InDegree ComputeInDegree(const EdgeLabeling& labeling, const Vertex& v) {
  std::vector<int> labels(static_cast<std::size_t>(labeling.dim()));
  for (int i = 0; i < labeling.dim(); ++i) {
    const BigInt r = labeling.Label(v, i);
    if (r != 1 && r != -1) throw UsageError("approximate-sink labels must be +-1");
    labels[static_cast<std::size_t>(i)] = static_cast<int>(r.get_si());
  }
  return ComputeInDegree(labels);
}

bool IsApproximateSink(const InDegree& degree, const Rational& threshold) {
  return Rational(degree.in_degree) > threshold;
}

bool NonNegativeVertex(const EdgeLabeling& labeling, const Vertex& v) {
  return OutWeight(labeling, v) >= 0;
}

BigInt MaxAbsLabel(const EdgeLabeling& labeling) {
  BigInt best = 0;
  for (const auto& edge : labeling.SortedEdges()) {
    if (abs(edge.value) > best) best = abs(edge.value);
  }
  if (labeling.default_label() == DefaultLabel::kOrientUpward && best < 1) {
    // Unstored edges carry +-1 (unless every edge happens to be stored).
    const std::size_t total_edges =
        static_cast<std::size_t>(labeling.dim()) << (labeling.dim() - 1);
    if (labeling.stored_edges() < total_edges) best = 1;
  }
  return best;
}

PathInstance MakePathInstance(Path path) {
  EdgeLabeling labeling = LabelFromPath(path);
  return PathInstance{std::move(path), std::move(labeling)};
}

PathInstance MakeHamiltonianPathInstance(int n, std::size_t suffix_steps, Rng& rng) {
  Path prefix = GrayPath(n);
  Path suffix = RandomWalk(prefix.back(), suffix_steps, rng);
  return MakePathInstance(prefix.Concat(suffix));
}

std::size_t DefaultSuffixSteps(int n) {
  CheckDimension(n);
  // ceil(2^{n/3}) computed exactly: smallest c with c^3 >= 2^n.
  std::uint64_t c = static_cast<std::uint64_t>(std::ceil(std::cbrt(std::ldexp(1.0, n))));
  while (c > 1 && (c - 1) * (c - 1) * (c - 1) >= (std::uint64_t{1} << n)) --c;
  while (c * c * c < (std::uint64_t{1} << n)) ++c;
  return static_cast<std::size_t>(n) * c;
}

}  // namespace corrquery
