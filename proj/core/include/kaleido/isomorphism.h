//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_ISOMORPHISM_H_
#define KALEIDO_ISOMORPHISM_H_

#include <array>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "kaleido/common.h"
#include "kaleido/graph.h"

namespace kaleido {

using Int128 = __int128;

// A small labeled graph: label array L, adjacency A (row bitmasks) and
// degree array D, where D holds degrees within the pattern itself.
struct Pattern {
  int k = 0;
  std::array<Label, kMaxPatternVertices> labels{};
  std::array<std::uint8_t, kMaxPatternVertices> degrees{};
  std::array<std::uint8_t, kMaxPatternVertices> rows{};

  bool Adjacent(int i, int j) const { return (rows[i] >> j) & 1u; }
  void Connect(int i, int j);
  // Exchanges vertices i and j: labels, degrees, row i/j and column i/j.
  void Swap(int i, int j);

  // Upper triangle in row-major order: pair (i, j), i < j, is bit
  // i*k - i*(i+1)/2 + (j-i-1).
  std::uint32_t AdjacencyBits() const;
  int EdgeCount() const;
  static Pattern FromBits(int k, std::span<const Label> labels, std::uint32_t bits);

  std::span<const Label> label_span() const { return {labels.data(), static_cast<std::size_t>(k)}; }
  std::span<const std::uint8_t> degree_span() const {
    return {degrees.data(), static_cast<std::size_t>(k)};
  }

  bool operator==(const Pattern& other) const;
};

inline int PairBit(int k, int i, int j) { return i * k - i * (i + 1) / 2 + (j - i - 1); }

// Characteristic polynomial  x^k + c[0] x^(k-1) + ... + c[k-1]  of a weighted
// adjacency matrix. c[0] is always zero (the diagonal is zero).
struct CharPoly {
  int k = 0;
  std::array<Int128, kMaxPatternVertices> coeffs{};

  bool operator==(const CharPoly& other) const;
};

struct WeightMatrix {
  int k = 0;
  std::array<std::array<std::int64_t, kMaxPatternVertices>, kMaxPatternVertices> m{};
};

// Induced pattern of a vertex-induced embedding, in embedding order.
// Throws SizeLimitError when e has more than kMaxPatternVertices vertices.
Pattern InitPattern(const Graph& g, std::span<const VertexId> e, bool ignore_labels = false);

// Pattern formed by the edges of an edge-induced embedding (not the induced
// subgraph). Vertices are numbered by first appearance; if `vertices` is
// non-null it receives the graph vertex of every pattern position.
Pattern InitEdgePattern(const Graph& g, std::span<const EdgeId> edges,
                        std::vector<VertexId>* vertices = nullptr, bool ignore_labels = false);

// Orders vertices by ascending label, and by ascending degree within a label,
// using pairwise swaps. `companion`, if non-empty, is permuted alongside.
void CanonicalSort(Pattern* p, std::span<VertexId> companion = {});

// Edge weight for labels a <= b: (a+1)*S + (b+1) with S = max_label + 2.
std::int64_t EncodeWeight(Label a, Label b, Label max_label);

// Symmetric weighted adjacency matrix of a sorted pattern.
WeightMatrix WeightedAdjMatrix(const Pattern& p, Label max_label);

// Faddeev-LeVerrier in checked 128-bit arithmetic. Throws Error on overflow
// and InvariantError if a trace division is inexact.
CharPoly CharPolynomial(const WeightMatrix& m);

struct PatternKey {
  std::uint64_t hash = 0;
  Pattern pattern;  // sorted
  CharPoly poly;
};

// hash(L) ^ hash(D) ^ hash(P) with per-array domain tags, FNV-1a 64.
std::uint64_t TripleHash(const Pattern& sorted, const CharPoly& poly);

// Sorts `p` (and `companion`), builds M and P, and hashes the triple.
PatternKey HashPattern(Pattern p, Label max_label, std::span<VertexId> companion = {});

// Hash of a vertex-induced embedding.
PatternKey EigenHash(const Graph& g, std::span<const VertexId> e, bool ignore_labels = false);

// "k;L=l1,..,lk;D=d1,..,dk;B=<hex of adjacency bits>"
std::string SerializePattern(const Pattern& p);

// Canonical labeling by color refinement followed by exhaustive search
// within color cells: the canonical order minimizes AdjacencyBits().
struct CanonicalForm {
  Pattern canonical;
  // Automorphism orbit of every position of the input pattern. Orbit ids are
  // dense and numbered by the smallest canonical position in each orbit.
  std::array<std::int8_t, kMaxPatternVertices> orbit{};
  // Number of distinct orbits.
  int orbit_count = 0;
};

CanonicalForm Canonicalize(const Pattern& p);

// Canonicalize() with a per-instance cache keyed by the exact input pattern.
// Not thread-safe; use one per worker.
class CanonicalCache {
 public:
  const CanonicalForm& Get(const Pattern& p);
  std::size_t size() const { return cache_.size(); }

 private:
  struct KeyHash {
    std::size_t operator()(const Pattern& p) const;
  };
  std::unordered_map<Pattern, CanonicalForm, KeyHash> cache_;
};

}  // namespace kaleido

#endif  // KALEIDO_ISOMORPHISM_H_
