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

#ifndef CORRQUERY_ORACLES_H_
#define CORRQUERY_ORACLES_H_

// Query access to hypercube labelings. A query names a vertex v and returns
// R(v, v^{(i)}) for every coordinate i.

#include <cstddef>
#include <vector>

#include "corrquery/hypercube.h"
#include "corrquery/labeling.h"

namespace corrquery {

class ApproximateSinkOracle {
 public:
  virtual ~ApproximateSinkOracle() = default;
  virtual int dim() const = 0;
  // +-1 labels of the n edges at v.
  virtual std::vector<int> Query(const Vertex& v) = 0;
};

// Answers from a fixed +-1 labeling.
class LabelingSinkOracle final : public ApproximateSinkOracle {
 public:
  explicit LabelingSinkOracle(const EdgeLabeling& labeling) : labeling_(labeling) {}

  int dim() const override { return labeling_.dim(); }
  std::vector<int> Query(const Vertex& v) override;
  std::size_t query_count() const { return queries_; }

 private:
  const EdgeLabeling& labeling_;
  std::size_t queries_ = 0;
};

// Answers from an integer labeling.
class NonNegativeVertexOracle {
 public:
  explicit NonNegativeVertexOracle(const EdgeLabeling& labeling) : labeling_(labeling) {}

  int dim() const { return labeling_.dim(); }
  std::vector<BigInt> Query(const Vertex& v);
  std::size_t query_count() const { return queries_; }
  const EdgeLabeling& labeling() const { return labeling_; }

 private:
  const EdgeLabeling& labeling_;
  std::size_t queries_ = 0;
};

}  // namespace corrquery

#endif  // CORRQUERY_ORACLES_H_
