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

#ifndef CORRQUERY_HYPERCUBE_H_
#define CORRQUERY_HYPERCUBE_H_

// Vertices, paths and vertex sets of the n-dimensional boolean hypercube.
//
// A vertex is a pure strategy profile of an n-player bi-strategy game.
// Player i (0-based) owns bit position i, so player 1 is bit 0. Text form
// lists players left to right: the n=4 profile where only player 1 plays 1
// is "1000".

#include <cstdint>
#include <functional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corrquery/random.h"
#include "corrquery/rational.h"

namespace corrquery {

inline constexpr int kMaxDimension = 30;
// Largest dimension for which a full 2^n path is materialized.
inline constexpr int kMaxMaterializedDimension = 26;
// Largest dimension for exact walk distributions.
inline constexpr int kMaxWalkDistributionDimension = 14;

class Vertex {
 public:
  Vertex(int n, std::uint32_t bits);

  int dim() const { return n_; }
  std::uint32_t bits() const { return bits_; }
  int bit(int i) const;

  friend bool operator==(const Vertex&, const Vertex&) = default;
  friend auto operator<=>(const Vertex& a, const Vertex& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.bits_ <=> b.bits_;
  }

 private:
  std::uint32_t bits_;
  int n_;
};

void CheckDimension(int n);
void CheckPlayer(int n, int i);

// v^{(i)}: bit i inverted.
Vertex Flip(const Vertex& v, int i);
// v^{i->b}: bit i forced to b.
Vertex SetBit(const Vertex& v, int i, int b);

int HammingDistance(const Vertex& a, const Vertex& b);
int Popcount(const Vertex& v);

std::string ToBitString(const Vertex& v);
Vertex VertexFromBitString(std::string_view text);

// A walk v_0 ... v_L whose consecutive vertices differ in exactly one bit.
// Revisits are allowed; staying put is not.
class Path {
 public:
  Path(int n, std::vector<std::uint32_t> vertices);

  int dim() const { return n_; }
  // Number of edges L.
  std::size_t steps() const { return vertices_.size() - 1; }
  std::size_t size() const { return vertices_.size(); }
  Vertex at(std::size_t j) const { return Vertex(n_, vertices_[j]); }
  Vertex front() const { return at(0); }
  Vertex back() const { return at(vertices_.size() - 1); }
  std::span<const std::uint32_t> bits() const { return vertices_; }

  // The coordinate flipped by step j (1 <= j <= L).
  int FlippedCoordinate(std::size_t j) const;

  Path Concat(const Path& tail) const;

 private:
  std::vector<std::uint32_t> vertices_;
  int n_;
};

// Reflected binary code order starting at the all-zeros vertex.
Path GrayPath(int n);
std::uint32_t GrayCode(std::uint32_t index);

// `steps` steps, each flipping a uniformly random coordinate.
Path RandomWalk(const Vertex& start, std::size_t steps, Rng& rng);

// A finite set of vertices of one dimension, iterated in increasing bit order.
class VertexSet {
 public:
  explicit VertexSet(int n);
  VertexSet(int n, std::span<const std::uint32_t> members);

  int dim() const { return n_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Vertex& v) const;
  bool contains_bits(std::uint32_t bits) const { return members_.count(bits) != 0; }
  // Returns true if v was not already present.
  bool insert(const Vertex& v);
  bool erase(const Vertex& v);

  const std::set<std::uint32_t>& bits() const { return members_; }
  std::vector<Vertex> vertices() const;

  // Number of neighbors of v inside the set.
  int NeighborsInside(const Vertex& v) const;

  bool IsSubsetOf(const VertexSet& other) const;
  friend bool operator==(const VertexSet&, const VertexSet&) = default;

 private:
  std::set<std::uint32_t> members_;
  int n_;
};

// The k-dimensional subcube spanned by `coordinates` through `anchor`.
VertexSet Subcube(const Vertex& anchor, std::span<const int> coordinates);

// e(U) = |{(u, i) : u in U and u^{(i)} in U}|, each undirected edge counted twice.
std::size_t InternalEdgeCount(const VertexSet& set);

// Smallest superset of `seed` in which every outside vertex has at most
// `threshold` neighbors inside. Vertices with strictly more than `threshold`
// inside neighbors are absorbed until a fixed point.
VertexSet Closure(const VertexSet& seed, const Rational& threshold);

inline constexpr int kMaxDenseClosureDimension = 24;

// Incremental closure: maintains V* and the inside-neighbor count of every
// vertex adjacent to it, so growing V* costs O(n) per absorbed vertex.
class ClosureBuilder {
 public:
  ClosureBuilder(int n, const Rational& threshold);

  // Adds v and closes. Returns the vertices that joined the closure, in the
  // order they were absorbed (v first if it was new).
  std::vector<Vertex> Add(const Vertex& v);

  const VertexSet& members() const { return members_; }
  int NeighborsInside(const Vertex& v) const;

 private:
  static constexpr std::uint8_t kMember = 0xFF;
  // Inside count of an outside vertex, or kMember.
  std::uint8_t& State(std::uint32_t bits);
  std::uint8_t StateOf(std::uint32_t bits) const;

  int n_;
  // Outside vertices join once their inside count reaches this value.
  int absorb_at_;
  VertexSet members_;
  // Indexed by bits up to kMaxDenseClosureDimension, hashed above it.
  std::vector<std::uint8_t> dense_state_;
  std::unordered_map<std::uint32_t, std::uint8_t> sparse_state_;
};

// Orders `set` so that each vertex has at most budget(v) neighbors of the set
// placed before it: repeatedly removes a vertex whose remaining degree fits
// its budget (least degree minus budget first, ties by lowest bits) and
// places it last.
// Throws InfeasibleError when some remaining subset admits no such vertex.
std::vector<Vertex> PeelOrder(const VertexSet& set,
                              const std::function<int(const Vertex&)>& budget);
// Same over the vertices of dimension n given by `members` (distinct bits).
std::vector<Vertex> PeelOrder(int n, std::vector<std::uint32_t> members,
                              const std::function<int(const Vertex&)>& budget);
// Uniform budget floor(threshold).
std::vector<Vertex> PeelOrder(const VertexSet& set, const Rational& threshold);

// Exact distribution of the flip-a-uniform-coordinate walk after `steps`
// steps: probability of vertex b is counts[b] / n^steps.
struct WalkDistribution {
  int n;
  std::size_t steps;
  BigInt denominator;
  std::vector<BigInt> counts;

  Rational Probability(const Vertex& v) const;
  // Popcount parity of the vertices carrying mass.
  int parity;
};

WalkDistribution ExactWalkDistribution(const Vertex& start, std::size_t steps);

// Total variation distance to the uniform distribution on the parity class
// the walk lives on after its steps.
Rational TotalVariationToParityUniform(const WalkDistribution& dist);

}  // namespace corrquery

template <>
struct std::hash<corrquery::Vertex> {
  std::size_t operator()(const corrquery::Vertex& v) const noexcept {
    return std::hash<std::uint64_t>()((static_cast<std::uint64_t>(v.dim()) << 32) | v.bits());
  }
};

#endif  // CORRQUERY_HYPERCUBE_H_
