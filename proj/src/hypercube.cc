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

#include "corrquery/hypercube.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <queue>
#include <unordered_map>
#include <set>
#include <utility>

#include "corrquery/errors.h"

namespace corrquery {

void CheckDimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw UsageError("dimension " + std::to_string(n) + " outside [1, " +
                     std::to_string(kMaxDimension) + "]");
  }
}

void CheckPlayer(int n, int i) {
  if (i < 0 || i >= n) {
    throw UsageError("player index " + std::to_string(i) + " outside [0, " +
                     std::to_string(n) + ")");
  }
}

Vertex::Vertex(int n, std::uint32_t bits) : bits_(bits), n_(n) {
  CheckDimension(n);
  if (n < 32 && (bits >> n) != 0) {
    throw UsageError("vertex bits use positions above dimension " + std::to_string(n));
  }
}

int Vertex::bit(int i) const {
  CheckPlayer(n_, i);
  return static_cast<int>((bits_ >> i) & 1U);
}

Vertex Flip(const Vertex& v, int i) {
  CheckPlayer(v.dim(), i);
  return Vertex(v.dim(), v.bits() ^ (1U << i));
}

Vertex SetBit(const Vertex& v, int i, int b) {
  CheckPlayer(v.dim(), i);
  if (b != 0 && b != 1) throw UsageError("strategy bit must be 0 or 1");
  return v.bit(i) == b ? v : Flip(v, i);
}

int HammingDistance(const Vertex& a, const Vertex& b) {
  if (a.dim() != b.dim()) throw UsageError("dimension mismatch");
  return std::popcount(a.bits() ^ b.bits());
}

int Popcount(const Vertex& v) { return std::popcount(v.bits()); }

std::string ToBitString(const Vertex& v) {
  std::string out(static_cast<std::size_t>(v.dim()), '0');
  for (int i = 0; i < v.dim(); ++i) {
    if ((v.bits() >> i) & 1U) out[static_cast<std::size_t>(i)] = '1';
  }
  return out;
}

Vertex VertexFromBitString(std::string_view text) {
  const int n = static_cast<int>(text.size());
  CheckDimension(n);
  std::uint32_t bits = 0;
  for (int i = 0; i < n; ++i) {
    const char c = text[static_cast<std::size_t>(i)];
    if (c == '1') {
      bits |= 1U << i;
    } else if (c != '0') {
      throw UsageError("bad profile string '" + std::string(text) + "'");
    }
  }
  return Vertex(n, bits);
}

Path::Path(int n, std::vector<std::uint32_t> vertices)
    : vertices_(std::move(vertices)), n_(n) {
  CheckDimension(n);
  if (vertices_.empty()) throw UsageError("path needs at least one vertex");
  for (std::size_t j = 0; j < vertices_.size(); ++j) {
    if (n < 32 && (vertices_[j] >> n) != 0) {
      throw UsageError("path vertex outside the hypercube");
    }
    if (j > 0 && std::popcount(vertices_[j] ^ vertices_[j - 1]) != 1) {
      throw UsageError("path step " + std::to_string(j) + " is not a hypercube edge");
    }
  }
}

int Path::FlippedCoordinate(std::size_t j) const {
  if (j == 0 || j >= vertices_.size()) throw UsageError("step index out of range");
  return std::countr_zero(vertices_[j] ^ vertices_[j - 1]);
}

Path Path::Concat(const Path& tail) const {
  if (tail.n_ != n_ || tail.vertices_.front() != vertices_.back()) {
    throw UsageError("paths do not join");
  }
  std::vector<std::uint32_t> joined = vertices_;
  joined.insert(joined.end(), tail.vertices_.begin() + 1, tail.vertices_.end());
  return Path(n_, std::move(joined));
}

std::uint32_t GrayCode(std::uint32_t index) { return index ^ (index >> 1); }

Path GrayPath(int n) {
  CheckDimension(n);
  if (n > kMaxMaterializedDimension) {
    throw CapacityError("gray path of dimension " + std::to_string(n) +
                        " is too large to materialize");
  }
  std::vector<std::uint32_t> vertices(std::size_t{1} << n);
  for (std::uint32_t j = 0; j < vertices.size(); ++j) vertices[j] = GrayCode(j);
  return Path(n, std::move(vertices));
}

Path RandomWalk(const Vertex& start, std::size_t steps, Rng& rng) {
  std::vector<std::uint32_t> vertices;
  vertices.reserve(steps + 1);
  vertices.push_back(start.bits());
  std::uint32_t current = start.bits();
  for (std::size_t s = 0; s < steps; ++s) {
    const auto i = static_cast<int>(UniformBelow(rng, static_cast<std::uint64_t>(start.dim())));
    current ^= 1U << i;
    vertices.push_back(current);
  }
  return Path(start.dim(), std::move(vertices));
}

VertexSet::VertexSet(int n) : n_(n) { CheckDimension(n); }

VertexSet::VertexSet(int n, std::span<const std::uint32_t> members) : VertexSet(n) {
  for (std::uint32_t b : members) insert(Vertex(n, b));
}

bool VertexSet::contains(const Vertex& v) const {
  return v.dim() == n_ && members_.count(v.bits()) != 0;
}

bool VertexSet::insert(const Vertex& v) {
  if (v.dim() != n_) throw UsageError("vertex dimension does not match set");
  return members_.insert(v.bits()).second;
}

bool VertexSet::erase(const Vertex& v) {
  return v.dim() == n_ && members_.erase(v.bits()) != 0;
}

std::vector<Vertex> VertexSet::vertices() const {
  std::vector<Vertex> out;
  out.reserve(members_.size());
  for (std::uint32_t b : members_) out.emplace_back(n_, b);
  return out;
}

int VertexSet::NeighborsInside(const Vertex& v) const {
  int count = 0;
  for (int i = 0; i < n_; ++i) count += contains_bits(v.bits() ^ (1U << i)) ? 1 : 0;
  return count;
}

bool VertexSet::IsSubsetOf(const VertexSet& other) const {
  if (other.n_ != n_) return false;
  return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                       members_.end());
}

VertexSet Subcube(const Vertex& anchor, std::span<const int> coordinates) {
  for (int c : coordinates) CheckPlayer(anchor.dim(), c);
  std::uint32_t base = anchor.bits();
  for (int c : coordinates) base &= ~(1U << c);
  VertexSet out(anchor.dim());
  const std::size_t k = coordinates.size();
  for (std::uint32_t mask = 0; mask < (1U << k); ++mask) {
    std::uint32_t bits = base;
    for (std::size_t j = 0; j < k; ++j) {
      if ((mask >> j) & 1U) bits |= 1U << coordinates[j];
    }
    out.insert(Vertex(anchor.dim(), bits));
  }
  return out;
}

std::size_t InternalEdgeCount(const VertexSet& set) {
  std::size_t count = 0;
  for (std::uint32_t b : set.bits()) {
    count += static_cast<std::size_t>(set.NeighborsInside(Vertex(set.dim(), b)));
  }
  return count;
}

namespace {

// Count that strictly exceeds a non-negative rational threshold.
int StrictlyAbove(const Rational& threshold) {
  if (threshold < 0) throw UsageError("threshold must be non-negative");
  const BigInt floor = Floor(threshold);
  if (floor >= kMaxDimension) return kMaxDimension + 1;
  return static_cast<int>(floor.get_si()) + 1;
}

}  // namespace

ClosureBuilder::ClosureBuilder(int n, const Rational& threshold)
    : n_(n), absorb_at_(StrictlyAbove(threshold)), members_(n) {
  if (n <= kMaxDenseClosureDimension) dense_state_.assign(std::size_t{1} << n, 0);
}

std::uint8_t& ClosureBuilder::State(std::uint32_t bits) {
  return dense_state_.empty() ? sparse_state_[bits] : dense_state_[bits];
}

std::uint8_t ClosureBuilder::StateOf(std::uint32_t bits) const {
  if (!dense_state_.empty()) return dense_state_[bits];
  auto it = sparse_state_.find(bits);
  return it == sparse_state_.end() ? 0 : it->second;
}

std::vector<Vertex> ClosureBuilder::Add(const Vertex& v) {
  std::vector<Vertex> added;
  if (v.dim() != n_) throw UsageError("dimension mismatch");
  if (StateOf(v.bits()) == kMember) return added;
  std::deque<std::uint32_t> pending{v.bits()};
  while (!pending.empty()) {
    const std::uint32_t b = pending.front();
    pending.pop_front();
    std::uint8_t& state = State(b);
    if (state == kMember) continue;
    state = kMember;
    members_.insert(Vertex(n_, b));
    added.emplace_back(n_, b);
    for (int i = 0; i < n_; ++i) {
      std::uint8_t& count = State(b ^ (1U << i));
      if (count == kMember) continue;
      if (++count == absorb_at_) pending.push_back(b ^ (1U << i));
    }
  }
  return added;
}

int ClosureBuilder::NeighborsInside(const Vertex& v) const {
  const std::uint8_t state = StateOf(v.bits());
  if (state != kMember) return state;
  int count = 0;
  for (int i = 0; i < n_; ++i) count += StateOf(v.bits() ^ (1U << i)) == kMember ? 1 : 0;
  return count;
}

VertexSet Closure(const VertexSet& seed, const Rational& threshold) {
  ClosureBuilder builder(seed.dim(), threshold);
  for (std::uint32_t b : seed.bits()) builder.Add(Vertex(seed.dim(), b));
  return builder.members();
}

std::vector<Vertex> PeelOrder(const VertexSet& set,
                              const std::function<int(const Vertex&)>& budget) {
  return PeelOrder(set.dim(), std::vector<std::uint32_t>(set.bits().begin(), set.bits().end()),
                   budget);
}

std::vector<Vertex> PeelOrder(int n, std::vector<std::uint32_t> members,
                              const std::function<int(const Vertex&)>& budget) {
  CheckDimension(n);
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw UsageError("peel order over repeated vertices");
  }
  const auto m = static_cast<std::int32_t>(members.size());

  // Position of each member in `members`; dense when the set fills a
  // sizable part of the cube.
  const bool dense = n <= kMaxMaterializedDimension &&
                     (members.size() << 4) >= (std::size_t{1} << n);
  std::vector<std::int32_t> dense_index;
  std::unordered_map<std::uint32_t, std::int32_t> sparse_index;
  if (dense) {
    dense_index.assign(std::size_t{1} << n, -1);
    for (std::int32_t k = 0; k < m; ++k) dense_index[members[k]] = k;
  } else {
    sparse_index.reserve(members.size());
    for (std::int32_t k = 0; k < m; ++k) sparse_index.emplace(members[k], k);
  }
  auto index_of = [&](std::uint32_t b) -> std::int32_t {
    if (dense) return dense_index[b];
    auto it = sparse_index.find(b);
    return it == sparse_index.end() ? -1 : it->second;
  };

  // slack = remaining degree - budget; a vertex can go last once slack <= 0.
  std::vector<int> slack(members.size());
  std::vector<char> removed(members.size(), 0);
  using Entry = std::pair<int, std::int32_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> ready;
  for (std::int32_t k = 0; k < m; ++k) {
    int degree = 0;
    for (int i = 0; i < n; ++i) degree += index_of(members[k] ^ (1U << i)) >= 0 ? 1 : 0;
    slack[k] = degree - budget(Vertex(n, members[k]));
    if (slack[k] <= 0) ready.emplace(slack[k], k);
  }

  std::vector<Vertex> reversed;
  reversed.reserve(members.size());
  while (static_cast<std::int32_t>(reversed.size()) < m) {
    // Stale entries carry a larger slack than the vertex has now.
    while (!ready.empty() &&
           (removed[ready.top().second] || ready.top().first != slack[ready.top().second])) {
      ready.pop();
    }
    if (ready.empty()) {
      throw InfeasibleError("no peel order: " + std::to_string(m - std::ssize(reversed)) +
                            " remaining vertices all exceed their neighbor budget");
    }
    const std::int32_t k = ready.top().second;
    ready.pop();
    removed[k] = 1;
    reversed.emplace_back(n, members[k]);
    for (int i = 0; i < n; ++i) {
      const std::int32_t w = index_of(members[k] ^ (1U << i));
      if (w < 0 || removed[w]) continue;
      if (--slack[w] <= 0) ready.emplace(slack[w], w);
    }
  }
  std::reverse(reversed.begin(), reversed.end());
  return reversed;
}

std::vector<Vertex> PeelOrder(const VertexSet& set, const Rational& threshold) {
  const int limit = StrictlyAbove(threshold) - 1;
  return PeelOrder(set, [limit](const Vertex&) { return limit; });
}

Rational WalkDistribution::Probability(const Vertex& v) const {
  if (v.dim() != n) throw UsageError("dimension mismatch");
  Rational p(counts[v.bits()], denominator);
  p.canonicalize();
  return p;
}

WalkDistribution ExactWalkDistribution(const Vertex& start, std::size_t steps) {
  const int n = start.dim();
  if (n > kMaxWalkDistributionDimension) {
    throw UsageError("exact walk distribution limited to n <= " +
                     std::to_string(kMaxWalkDistributionDimension));
  }
  const std::size_t size = std::size_t{1} << n;
  std::vector<BigInt> current(size, BigInt(0));
  std::vector<BigInt> next(size, BigInt(0));
  current[start.bits()] = 1;
  for (std::size_t s = 0; s < steps; ++s) {
    for (std::size_t b = 0; b < size; ++b) {
      BigInt& acc = next[b];
      acc = 0;
      for (int i = 0; i < n; ++i) acc += current[b ^ (std::size_t{1} << i)];
    }
    std::swap(current, next);
  }
  BigInt denominator;
  mpz_ui_pow_ui(denominator.get_mpz_t(), static_cast<unsigned long>(n),
                static_cast<unsigned long>(steps));
  const int parity = (Popcount(start) + static_cast<int>(steps % 2)) % 2;
  return WalkDistribution{n, steps, std::move(denominator), std::move(current), parity};
}

Rational TotalVariationToParityUniform(const WalkDistribution& dist) {
  const std::size_t size = std::size_t{1} << dist.n;
  // Uniform mass on the class is 1 / 2^{n-1}; work over the common
  // denominator D * 2^{n-1}.
  const BigInt class_size = PowerOfTwo(static_cast<unsigned>(dist.n - 1));
  BigInt total = 0;
  for (std::size_t b = 0; b < size; ++b) {
    const int parity = std::popcount(static_cast<std::uint32_t>(b)) % 2;
    if (parity == dist.parity) {
      total += abs(dist.counts[b] * class_size - dist.denominator);
    } else {
      total += dist.counts[b] * class_size;
    }
  }
  Rational tv(total, 2 * dist.denominator * class_size);
  tv.canonicalize();
  return tv;
}

}  // namespace corrquery
