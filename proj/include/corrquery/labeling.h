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

#ifndef CORRQUERY_LABELING_H_
#define CORRQUERY_LABELING_H_

// Antisymmetric integer labelings of hypercube edges.
//
// R(v, v^{(i)}) = -R(v^{(i)}, v). One value is stored per undirected edge,
// keyed by its lower endpoint (bit i clear) and the coordinate i.
//
// Orientation convention for +-1 (approximate sink) labelings:
// R(v, w) = +1 means the edge points INTO v. With the game reduction
// u_i(v) - u_i(v^{(i)}) = R(v, v^{(i)}), an edge points toward the endpoint
// that player i prefers, so a sink is a profile where every player is content.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corrquery/hypercube.h"
#include "corrquery/random.h"
#include "corrquery/rational.h"

namespace corrquery {

enum class LabelingKind { kApproximateSink, kNonNegativeVertex, kPath };

// Value of an edge that was never stored.
enum class DefaultLabel {
  kZero,
  kUndefined,
  // Every unstored edge points from its lower endpoint to its upper one:
  // R(lower, upper) = -1.
  kOrientUpward,
};

class EdgeLabeling {
 public:
  EdgeLabeling(int n, LabelingKind kind, DefaultLabel default_label);

  int dim() const { return n_; }
  LabelingKind kind() const { return kind_; }
  DefaultLabel default_label() const { return default_label_; }

  // R(v, v^{(i)}), or nullopt for an undefined edge.
  std::optional<BigInt> Find(const Vertex& v, int i) const;
  // R(v, v^{(i)}); throws IncompleteLabelingError for an undefined edge.
  BigInt Label(const Vertex& v, int i) const;
  bool IsDefined(const Vertex& v, int i) const;
  // True if a value was stored (as opposed to coming from the default).
  bool IsStored(const Vertex& v, int i) const;

  // Sets R(v, v^{(i)}) = value (and so R(v^{(i)}, v) = -value).
  void Set(const Vertex& v, int i, const BigInt& value);
  // R(v, v^{(i)}) += delta.
  void Add(const Vertex& v, int i, const BigInt& delta);

  std::size_t stored_edges() const { return labels_.size(); }

  struct StoredEdge {
    Vertex lower;
    int coordinate;
    BigInt value;  // R(lower, lower^{(coordinate)})
  };
  // Stored edges sorted by (lower bits, coordinate).
  std::vector<StoredEdge> SortedEdges() const;

 private:
  static std::uint64_t Key(std::uint32_t lower, int i) {
    return (static_cast<std::uint64_t>(lower) << 5) | static_cast<std::uint64_t>(i);
  }
  // Lower endpoint and sign of R(v, v^{(i)}) relative to the stored value.
  std::pair<std::uint32_t, int> Orient(const Vertex& v, int i) const;

  int n_;
  LabelingKind kind_;
  DefaultLabel default_label_;
  std::unordered_map<std::uint64_t, BigInt> labels_;
};

// Labeling induced by a walk: step j (1-based) over edge v_{j-1} -> v_j adds
// -j to R(v_{j-1}, v_j). Repeated traversals accumulate.
EdgeLabeling LabelFromPath(const Path& path);

// A full +-1 labeling with independent fair orientations.
EdgeLabeling RandomApproximateSinkLabeling(int n, Rng& rng);

// sum_i R(v, v^{(i)}).
BigInt OutWeight(const EdgeLabeling& labeling, const Vertex& v);

// Closed form of OutWeight for a path labeling:
// -|{0 <= j < L : v_j = v}| + L * [v == v_L].
BigInt PathOutWeightClosedForm(const Path& path, const Vertex& v);

struct InDegree {
  // |{i : R(v, v^{(i)}) = +1}|
  int in_degree;
  // sum_i R(v^{(i)}, v) = n - 2 * in_degree
  int incoming_sum;
};

// Requires every incident edge defined and +-1.
InDegree ComputeInDegree(const EdgeLabeling& labeling, const Vertex& v);
// Same, from the n answered labels R(v, v^{(i)}).
InDegree ComputeInDegree(const std::vector<int>& incident_labels);

// in-degree strictly above `threshold` (the approximate-sink win condition).
bool IsApproximateSink(const InDegree& degree, const Rational& threshold);

bool NonNegativeVertex(const EdgeLabeling& labeling, const Vertex& v);

// max |R(u, v)| over defined edges; 0 for an empty labeling.
BigInt MaxAbsLabel(const EdgeLabeling& labeling);

// A path labeling together with the walk that induced it.
struct PathInstance {
  Path path;
  EdgeLabeling labeling;

  Vertex end() const { return path.back(); }
  std::size_t steps() const { return path.steps(); }
};

PathInstance MakePathInstance(Path path);

// Gray-code Hamiltonian prefix followed by a uniform random walk of
// `suffix_steps` steps from its last vertex.
PathInstance MakeHamiltonianPathInstance(int n, std::size_t suffix_steps, Rng& rng);

// Suffix length n * ceil(2^{n/3}).
std::size_t DefaultSuffixSteps(int n);

}  // namespace corrquery

#endif  // CORRQUERY_LABELING_H_
