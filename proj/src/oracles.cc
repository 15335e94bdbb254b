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

#include "corrquery/oracles.h"

#include "corrquery/errors.h"

namespace corrquery {

std::vector<int> LabelingSinkOracle::Query(const Vertex& v) {
  ++queries_;
  std::vector<int> out(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) {
    const BigInt r = labeling_.Label(v, i);
    if (r != 1 && r != -1) throw UsageError("approximate-sink labels must be +-1");
    out[static_cast<std::size_t>(i)] = static_cast<int>(r.get_si());
  }
  return out;
}

std::vector<BigInt> NonNegativeVertexOracle::Query(const Vertex& v) {
  ++queries_;
  std::vector<BigInt> out;
  out.reserve(static_cast<std::size_t>(dim()));
  for (int i = 0; i < dim(); ++i) out.push_back(labeling_.Label(v, i));
  return out;
}

}  // namespace corrquery
