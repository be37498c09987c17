//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_MINING_H_
#define KALEIDO_MINING_H_

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "kaleido/explorer.h"
#include "kaleido/graph.h"
#include "kaleido/hybrid_storage.h"
#include "kaleido/pattern_map.h"

namespace kaleido {

// Application size limits.
inline constexpr int kMinMotifSize = 3;
inline constexpr int kMaxMotifSize = 5;
inline constexpr int kMinCliqueSize = 3;
inline constexpr int kMaxCliqueSize = 8;
inline constexpr int kMinFsmEdges = 1;
inline constexpr int kMaxFsmEdges = 7;

// Maps one embedding into the calling worker's local PatternMap.
using AggregatingMapper =
    std::function<void(int worker, std::span<const ElementId> embedding, PatternMap* local)>;
using PatternFilter = std::function<bool(const PatternEntry&)>;

// Applies `mapper` to every top-level embedding of `store` (spilled or not),
// reduces the worker-local maps pairwise in worker order and keeps the
// entries accepted by `filter`.
PatternMap ResultAggregator(HybridStore* store, const AggregatingMapper& mapper,
                            const PatternFilter& filter = {});

// Explores until the store holds `depth` levels.
void EmbeddingsExplorer(HybridStore* store, std::size_t depth, const ExploreFilters& filters = {});

struct PhaseTiming {
  std::string name;
  double seconds = 0;
};

struct MiningResult {
  enum class Kind { kPatterns, kTriangles, kCliques };

  Kind kind = Kind::kPatterns;
  std::string app;
  PatternMap patterns;     // motif and fsm
  std::uint64_t count = 0;  // tc and clique
  StorageMetrics storage;
  std::vector<PhaseTiming> phases;
};

// Census of connected induced k-vertex subgraphs, labels ignored. Explores
// to k-1 vertices; the last expansion happens inside the mapper.
MiningResult MotifCount(const Graph& g, int k, const EngineOptions& options = {});

// Number of k-cliques: the size of the top level after k-1 explorations that
// only accept candidates adjacent to the whole embedding.
MiningResult CliqueDiscovery(const Graph& g, int k, const EngineOptions& options = {});

// For every canonical 2-embedding <u,v>, counts common neighbors w > v.
MiningResult TriangleCount(const Graph& g, const EngineOptions& options = {});

// Labeled patterns with k_edges edges whose minimum-image support reaches
// `support`. Reported values are min(support, true support), i.e. `support`.
MiningResult Fsm(const Graph& g, int k_edges, std::uint64_t support,
                 const EngineOptions& options = {});

// Result file: one "<pattern>\t<value>" line per pattern in hash order plus
// a "# patterns=N total=T" summary, or a single "triangles: N" /
// "cliques: N" line.
void WriteResult(const MiningResult& result, std::ostream& out);

// Run metrics as key=value lines.
void WriteMetrics(const MiningResult& result, std::ostream& out);

}  // namespace kaleido

#endif  // KALEIDO_MINING_H_
