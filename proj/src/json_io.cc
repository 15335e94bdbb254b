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

#include "corrquery/json_io.h"

#include <string>
#include <utility>

#include "corrquery/errors.h"

namespace corrquery {
namespace {

const Json& Field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw UsageError(std::string("missing field '") + name + "'");
  }
  return doc.at(name);
}

std::string StringField(const Json& doc, const char* name) {
  const Json& value = Field(doc, name);
  if (!value.is_string()) throw UsageError(std::string("field '") + name + "' must be a string");
  return value.get<std::string>();
}

std::int64_t IntField(const Json& doc, const char* name) {
  const Json& value = Field(doc, name);
  if (!value.is_number_integer()) {
    throw UsageError(std::string("field '") + name + "' must be an integer");
  }
  return value.get<std::int64_t>();
}

int DimensionField(const Json& doc) {
  const std::int64_t n = IntField(doc, "n");
  if (n < 1 || n > kMaxDimension) throw UsageError("n out of range: " + std::to_string(n));
  return static_cast<int>(n);
}

Vertex ParseVertex(const Json& value, int n) {
  if (!value.is_string()) throw UsageError("vertices are bit strings");
  Vertex v = VertexFromBitString(value.get<std::string>());
  if (v.dim() != n) throw UsageError("bit string of the wrong length");
  return v;
}

std::string KindName(LabelingKind kind) {
  switch (kind) {
    case LabelingKind::kApproximateSink:
      return "as";
    case LabelingKind::kNonNegativeVertex:
      return "nnv";
    case LabelingKind::kPath:
      return "path";
  }
  return "nnv";
}

std::string DefaultName(DefaultLabel label) {
  switch (label) {
    case DefaultLabel::kZero:
      return "zero";
    case DefaultLabel::kUndefined:
      return "undefined";
    case DefaultLabel::kOrientUpward:
      return "upward";
  }
  return "zero";
}

DefaultLabel ParseDefault(const std::string& name) {
  if (name == "zero") return DefaultLabel::kZero;
  if (name == "undefined") return DefaultLabel::kUndefined;
  if (name == "upward") return DefaultLabel::kOrientUpward;
  throw UsageError("unknown default label '" + name + "'");
}

Json CostToJson(const QueryTranscript& transcript) {
  return Json{{"queries", transcript.query_count()},
              {"support", transcript.support_size_charged()},
              {"total", transcript.cost()}};
}

}  // namespace

Json PathToJson(const Path& path) {
  Json out = Json::array();
  for (std::size_t j = 0; j < path.size(); ++j) out.push_back(ToBitString(path.at(j)));
  return out;
}

Path PathFromJson(const Json& doc, int n) {
  if (!doc.is_array() || doc.empty()) throw UsageError("a path is a non-empty array of bit strings");
  std::vector<std::uint32_t> vertices;
  vertices.reserve(doc.size());
  for (const Json& entry : doc) vertices.push_back(ParseVertex(entry, n).bits());
  return Path(n, std::move(vertices));
}

Json LabelingToJson(const EdgeLabeling& labeling, std::optional<std::uint64_t> seed,
                    const Path* path) {
  Json out;
  out["n"] = labeling.dim();
  // Without its walk a path labeling is written as plain edges.
  out["kind"] = labeling.kind() == LabelingKind::kPath && path == nullptr
                    ? "nnv"
                    : KindName(labeling.kind());
  if (seed) out["seed"] = *seed;
  out["default"] = DefaultName(labeling.default_label());
  Json edges = Json::array();
  for (const auto& edge : labeling.SortedEdges()) {
    edges.push_back(
        {{"v", ToBitString(edge.lower)}, {"i", edge.coordinate}, {"r", ToString(edge.value)}});
  }
  out["edges"] = std::move(edges);
  if (path != nullptr) out["path"] = PathToJson(*path);
  return out;
}

LabelingDocument LabelingFromJson(const Json& doc) {
  const int n = DimensionField(doc);
  const std::string kind = StringField(doc, "kind");
  std::optional<std::uint64_t> seed;
  if (doc.contains("seed")) seed = static_cast<std::uint64_t>(IntField(doc, "seed"));

  if (kind == "path") {
    Path path = PathFromJson(Field(doc, "path"), n);
    EdgeLabeling labeling = LabelFromPath(path);
    return {std::move(labeling), seed, std::move(path)};
  }
  LabelingKind parsed_kind;
  DefaultLabel default_label;
  if (kind == "as") {
    parsed_kind = LabelingKind::kApproximateSink;
    default_label = DefaultLabel::kUndefined;
  } else if (kind == "nnv") {
    parsed_kind = LabelingKind::kNonNegativeVertex;
    default_label = DefaultLabel::kZero;
  } else {
    throw UsageError("unknown labeling kind '" + kind + "'");
  }
  if (doc.contains("default")) default_label = ParseDefault(StringField(doc, "default"));

  EdgeLabeling labeling(n, parsed_kind, default_label);
  const Json& edges = Field(doc, "edges");
  if (!edges.is_array()) throw UsageError("'edges' must be an array");
  for (const Json& edge : edges) {
    const Vertex v = ParseVertex(Field(edge, "v"), n);
    const std::int64_t i = IntField(edge, "i");
    if (i < 0 || i >= n) throw UsageError("edge coordinate out of range");
    const BigInt r = ParseBigInt(StringField(edge, "r"));
    if (parsed_kind == LabelingKind::kApproximateSink && r != 1 && r != -1) {
      throw UsageError("approximate-sink labels must be +1 or -1");
    }
    labeling.Set(v, static_cast<int>(i), r);
  }
  return {std::move(labeling), seed, std::nullopt};
}

Json GameToJson(const GameInstance& game) {
  if (const auto* as = dynamic_cast<const ApproximateSinkGame*>(&game)) {
    return Json{{"n", game.num_players()}, {"kind", "from_as"},
                {"labeling", LabelingToJson(as->labeling())}};
  }
  if (const auto* nnv = dynamic_cast<const NonNegativeVertexGame*>(&game)) {
    return Json{{"n", game.num_players()}, {"kind", "from_nnv"},
                {"labeling", LabelingToJson(nnv->labeling())}};
  }
  const int n = game.num_players();
  if (n > kMaxDenseJsonDimension) {
    throw CapacityError("dense game JSON is limited to n <= " +
                        std::to_string(kMaxDenseJsonDimension));
  }
  Json table = Json::array();
  for (std::uint32_t b = 0; b < (std::uint32_t{1} << n); ++b) {
    Json row = Json::array();
    for (const Rational& u : game.Utilities(Vertex(n, b))) row.push_back(ToString(u));
    table.push_back(std::move(row));
  }
  return Json{{"n", n}, {"kind", "table"}, {"utilities", std::move(table)}};
}

GamePtr GameFromJson(const Json& doc) {
  const int n = DimensionField(doc);
  const std::string kind = StringField(doc, "kind");
  if (kind == "from_as" || kind == "from_nnv") {
    LabelingDocument parsed = LabelingFromJson(Field(doc, "labeling"));
    if (parsed.labeling.dim() != n) throw UsageError("labeling dimension differs from n");
    auto labeling = std::make_shared<const EdgeLabeling>(std::move(parsed.labeling));
    return kind == "from_as" ? GameFromApproximateSink(std::move(labeling))
                             : GameFromNonNegativeVertex(std::move(labeling));
  }
  if (kind != "table") throw UsageError("unknown game kind '" + kind + "'");
  if (n > kMaxDenseJsonDimension) {
    throw CapacityError("dense game JSON is limited to n <= " +
                        std::to_string(kMaxDenseJsonDimension));
  }
  const Json& table = Field(doc, "utilities");
  const std::size_t profiles = std::size_t{1} << n;
  if (!table.is_array() || table.size() != profiles) {
    throw UsageError("'utilities' must have one row per profile");
  }
  std::vector<Rational> values;
  values.reserve(profiles * static_cast<std::size_t>(n));
  for (const Json& row : table) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n)) {
      throw UsageError("each utility row must have n entries");
    }
    for (const Json& entry : row) {
      if (!entry.is_string()) throw UsageError("utilities are rational strings");
      values.push_back(ParseRational(entry.get<std::string>()));
    }
  }
  return std::make_shared<const TableGame>(
      TableGame::FromFunction(n, [&](const Vertex& v, int i) {
        return values[static_cast<std::size_t>(v.bits()) * static_cast<std::size_t>(n) +
                      static_cast<std::size_t>(i)];
      }));
}

Json DistributionToJson(const SparseDistribution& x) {
  Json entries = Json::array();
  for (const auto& [bits, p] : x.entries()) {
    entries.push_back({{"profile", ToBitString(Vertex(x.dim(), bits))}, {"p", ToString(p)}});
  }
  return Json{{"entries", std::move(entries)}};
}

SparseDistribution DistributionFromJson(const Json& doc, int n) {
  const Json& entries = Field(doc, "entries");
  if (!entries.is_array()) throw UsageError("'entries' must be an array");
  std::map<std::uint32_t, Rational> mass;
  for (const Json& entry : entries) {
    const Vertex v = ParseVertex(Field(entry, "profile"), n);
    const Rational p = ParseRational(StringField(entry, "p"));
    if (p < 0) throw UsageError("negative probability");
    if (!mass.emplace(v.bits(), p).second) throw UsageError("repeated profile in distribution");
  }
  return SparseDistribution(n, std::move(mass));
}

Json RegretReportToJson(const RegretReport& report) {
  Json regrets = Json::array();
  for (int i = 0; i < report.n; ++i) {
    for (int b = 0; b < 2; ++b) {
      regrets.push_back({{"player", i}, {"b", b}, {"regret", ToString(report.regret(i, b))}});
    }
  }
  return Json{{"n", report.n},
              {"epsilon", ToString(report.epsilon)},
              {"regrets", std::move(regrets)},
              {"max_regret", ToString(report.max_regret)},
              {"pass", report.pass}};
}

Json SolverRunToJson(const SolverRun& run) {
  Json output = nullptr;
  if (run.distribution) {
    output = Json{{"distribution", DistributionToJson(*run.distribution)}};
  } else if (run.vertex) {
    output = Json{{"vertex", ToBitString(*run.vertex)}};
  }
  return Json{{"solver", run.solver},   {"seed", run.seed},
              {"steps", run.steps},     {"output", std::move(output)},
              {"cost", CostToJson(run.transcript)}, {"succeeded", run.succeeded}};
}

}  // namespace corrquery
