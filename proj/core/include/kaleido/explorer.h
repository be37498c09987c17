//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_EXPLORER_H_
#define KALEIDO_EXPLORER_H_

#include <functional>
#include <span>
#include <vector>

#include "kaleido/common.h"
#include "kaleido/cse.h"
#include "kaleido/graph.h"

namespace kaleido {

// Canonicality of the vertex-induced embedding <e, v>:
//   (i) v > e[0];
//   (iii) with a the first position adjacent to v, every e[b] with b > a is
//         smaller than v.
// Clause (ii), adjacency of v to e, is the caller's precondition.
bool IsCanonicalExtension(const Graph& g, std::span<const VertexId> e, VertexId v);

// Edge-induced analogue over edge ids, with "adjacent" meaning "shares an
// endpoint": the candidate must exceed the first edge, and every edge after
// the first position it touches must be smaller than it.
bool IsCanonicalEdgeExtension(const Graph& g, std::span<const EdgeId> e, EdgeId candidate);

// Whether a whole sequence is canonical, checked prefix by prefix
// (connectivity included).
bool IsCanonicalSequence(const Graph& g, std::span<const VertexId> seq);
bool IsCanonicalEdgeSequence(const Graph& g, std::span<const EdgeId> seq);

// Optional user filters. `candidate` runs after the canonical filter;
// `parent` decides whether an embedding is expanded at all.
using CandidateFilter = std::function<bool(std::span<const ElementId>, ElementId)>;
using EmbeddingPredicate = std::function<bool(std::span<const ElementId>)>;

struct ExploreFilters {
  CandidateFilter candidate;
  EmbeddingPredicate parent;
};

// Random access to the embeddings of one level (or of one slice of it).
class EmbeddingSource {
 public:
  virtual ~EmbeddingSource() = default;
  virtual std::uint64_t size() const = 0;
  // Embedding length k.
  virtual std::size_t length() const = 0;
  virtual void Extract(std::uint64_t i, std::span<ElementId> out) const = 0;
};

// A resident CSE level addressed by global offset.
class ResidentLevelSource final : public EmbeddingSource {
 public:
  ResidentLevelSource(const Cse& cse, std::size_t level) : cse_(cse), level_(level) {}
  std::uint64_t size() const override { return cse_.level(level_).count; }
  std::size_t length() const override { return level_; }
  void Extract(std::uint64_t i, std::span<ElementId> out) const override {
    cse_.ExtractInto(level_, i, out);
  }

 private:
  const Cse& cse_;
  std::size_t level_;
};

// Children produced for a contiguous range of parents: `off` is local
// (off[0] = 0) with one entry per parent plus one.
struct LevelBuffer {
  std::vector<ElementId> vert;
  std::vector<Offset> off{0};
};

// Candidate generation for one worker. Holds scratch space; not thread-safe.
class Extender {
 public:
  Extender(const Graph& g, EmbeddingKind kind);

  // Canonical one-element extensions of e, ascending.
  void CanonicalChildren(std::span<const ElementId> e, std::vector<ElementId>* out);

  // Number of distinct neighbors (vertices or edges) of e that are not in e,
  // before any canonicality or user filtering. For vertex-induced embeddings
  // the parent prefix's candidate set is cached and merged with the last
  // vertex's neighbors, so consecutive siblings cost O(d) each.
  std::uint64_t PredictCandidates(std::span<const ElementId> e);

  // Expands parents [begin, end) of `source` into `out` (appending).
  void ExpandRange(const EmbeddingSource& source, std::uint64_t begin, std::uint64_t end,
                   const ExploreFilters& filters, LevelBuffer* out);

  void PredictRange(const EmbeddingSource& source, std::uint64_t begin, std::uint64_t end,
                    std::span<std::uint64_t> out);

 private:
  void VertexChildren(std::span<const VertexId> e, std::vector<ElementId>* out);
  void EdgeChildren(std::span<const EdgeId> e, std::vector<ElementId>* out);
  std::uint64_t PredictEdge(std::span<const EdgeId> e);

  const Graph& g_;
  EmbeddingKind kind_;
  std::vector<std::pair<EdgeId, int>> edge_scratch_;
  std::vector<std::pair<VertexId, int>> touch_scratch_;
  std::vector<ElementId> children_;
  std::vector<VertexId> cached_prefix_;
  std::vector<VertexId> cached_candidates_;
  bool cache_valid_ = false;
};

// Sorted distinct neighbors of the vertex set `e`, excluding e itself.
void NeighborUnion(const Graph& g, std::span<const VertexId> e, std::vector<VertexId>* out);

std::uint64_t PredictCandidateSize(const Graph& g, const Cse& cse, std::size_t level,
                                   std::uint64_t offset);
// Predictions for every embedding of a resident level.
std::vector<std::uint64_t> PredictLevel(const Graph& g, const Cse& cse, std::size_t level,
                                        int workers = 1);

// Expands the resident top level of `cse` into the next level's arrays using
// `workers` prediction-balanced ranges. Output is independent of `workers`.
LevelBuffer ExploreLevel(const Graph& g, const Cse& cse, const ExploreFilters& filters,
                         int workers = 1);

// Level-1 elements for a run: all vertices or all edges.
void InitLevel(const Graph& g, Cse* cse);

}  // namespace kaleido

#endif  // KALEIDO_EXPLORER_H_
