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

#ifndef CORRQUERY_JSON_IO_H_
#define CORRQUERY_JSON_IO_H_

// JSON encodings of instances, distributions and reports. Vertices are bit
// strings with player 1 first, integers are decimal strings and rationals
// are "p/q" strings, so every value round-trips exactly. Malformed input
// throws UsageError.

#include <cstdint>
#include <optional>

#include "json.hpp"

#include "corrquery/equilibrium.h"
#include "corrquery/games.h"
#include "corrquery/hypercube.h"
#include "corrquery/labeling.h"
#include "corrquery/solvers.h"

namespace corrquery {

using Json = nlohmann::ordered_json;

// Largest n for which a game is written as a dense utility table.
inline constexpr int kMaxDenseJsonDimension = 16;

struct LabelingDocument {
  EdgeLabeling labeling;
  std::optional<std::uint64_t> seed;
  // Present for kind "path"; the labeling is then derived from it.
  std::optional<Path> path;
};

// {"n", "kind": "as"|"nnv"|"path", "seed"?, "default"?, "edges": [{"v", "i",
// "r"}], "path"?}. "v" is the lower endpoint of the edge, "i" the 0-based
// coordinate and "r" = R(v, v^{(i)}). "default" names the value of edges not
// listed: "undefined", "zero" or "upward" (lower endpoint to upper one).
// A path labeling written without its walk is tagged "nnv".
Json LabelingToJson(const EdgeLabeling& labeling, std::optional<std::uint64_t> seed = std::nullopt,
                    const Path* path = nullptr);
LabelingDocument LabelingFromJson(const Json& doc);

// Games built from a labeling are written as {"kind": "from_as" | "from_nnv",
// "labeling": ...}; anything else as a dense "table" of utilities[profile][i].
Json GameToJson(const GameInstance& game);
GamePtr GameFromJson(const Json& doc);

Json DistributionToJson(const SparseDistribution& x);
SparseDistribution DistributionFromJson(const Json& doc, int n);

Json RegretReportToJson(const RegretReport& report);

// Output, cost and verified success of a run.
Json SolverRunToJson(const SolverRun& run);

Json PathToJson(const Path& path);
Path PathFromJson(const Json& doc, int n);

}  // namespace corrquery

#endif  // CORRQUERY_JSON_IO_H_
