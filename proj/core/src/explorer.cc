//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/explorer.h"

#include <algorithm>
#include <array>
#include <limits>

#include "kaleido/partition.h"

namespace kaleido {

namespace {

bool Contains(std::span<const ElementId> e, ElementId x) {
  return std::find(e.begin(), e.end(), x) != e.end();
}

bool EdgesTouch(const Graph& g, EdgeId a, EdgeId b) {
  auto [a0, a1] = g.EdgeEndpoints(a);
  auto [b0, b1] = g.EdgeEndpoints(b);
  return a0 == b0 || a0 == b1 || a1 == b0 || a1 == b1;
}

// Largest element after position a, or -1.
std::int64_t MaxAfter(std::span<const ElementId> e, std::size_t a) {
  std::int64_t m = -1;
  for (std::size_t b = a + 1; b < e.size(); ++b) m = std::max<std::int64_t>(m, e[b]);
  return m;
}

}  // namespace

bool IsCanonicalExtension(const Graph& g, std::span<const VertexId> e, VertexId v) {
  if (e.empty()) return true;
  if (v <= e[0]) return false;
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (g.CheckLink(e[a], v)) return static_cast<std::int64_t>(v) > MaxAfter(e, a);
  }
  return false;
}

bool IsCanonicalEdgeExtension(const Graph& g, std::span<const EdgeId> e, EdgeId candidate) {
  if (e.empty()) return true;
  if (candidate <= e[0]) return false;
  for (std::size_t a = 0; a < e.size(); ++a) {
    if (EdgesTouch(g, e[a], candidate)) {
      return static_cast<std::int64_t>(candidate) > MaxAfter(e, a);
    }
  }
  return false;
}

bool IsCanonicalSequence(const Graph& g, std::span<const VertexId> seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (Contains(seq.first(i), seq[i])) return false;
    if (!IsCanonicalExtension(g, seq.first(i), seq[i])) return false;
  }
  return true;
}

bool IsCanonicalEdgeSequence(const Graph& g, std::span<const EdgeId> seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (Contains(seq.first(i), seq[i])) return false;
    if (!IsCanonicalEdgeExtension(g, seq.first(i), seq[i])) return false;
  }
  return true;
}

void NeighborUnion(const Graph& g, std::span<const VertexId> e, std::vector<VertexId>* out) {
  out->clear();
  for (VertexId u : e) {
    auto nbrs = g.Neighbors(u);
    out->insert(out->end(), nbrs.begin(), nbrs.end());
  }
  std::sort(out->begin(), out->end());
  out->erase(std::unique(out->begin(), out->end()), out->end());
  std::erase_if(*out, [&](VertexId w) { return Contains(e, w); });
}

Extender::Extender(const Graph& g, EmbeddingKind kind) : g_(g), kind_(kind) {}

void Extender::CanonicalChildren(std::span<const ElementId> e, std::vector<ElementId>* out) {
  out->clear();
  if (e.empty()) return;
  if (kind_ == EmbeddingKind::kVertexInduced) {
    VertexChildren(e, out);
  } else {
    EdgeChildren(e, out);
  }
}

void Extender::VertexChildren(std::span<const VertexId> e, std::vector<ElementId>* out) {
  const std::size_t k = e.size();
  std::array<std::int64_t, kMaxEmbeddingSize> max_after{};
  max_after[k - 1] = -1;
  for (std::size_t a = k - 1; a-- > 0;) {
    max_after[a] = std::max<std::int64_t>(max_after[a + 1], e[a + 1]);
  }
  std::array<const VertexId*, kMaxEmbeddingSize> cur{};
  std::array<const VertexId*, kMaxEmbeddingSize> end{};
  for (std::size_t j = 0; j < k; ++j) {
    auto nbrs = g_.Neighbors(e[j]);
    // Clause (i): only vertices above e[0] can ever be appended.
    cur[j] = std::upper_bound(nbrs.data(), nbrs.data() + nbrs.size(), e[0]);
    end[j] = nbrs.data() + nbrs.size();
  }
  // Ascending k-way merge; the first list holding the minimum is the earliest
  // attach position a.
  while (true) {
    VertexId best = std::numeric_limits<VertexId>::max();
    std::size_t attach = k;
    for (std::size_t j = 0; j < k; ++j) {
      if (cur[j] != end[j] && *cur[j] < best) {
        best = *cur[j];
        attach = j;
      }
    }
    if (attach == k) break;
    for (std::size_t j = attach; j < k; ++j) {
      if (cur[j] != end[j] && *cur[j] == best) ++cur[j];
    }
    if (static_cast<std::int64_t>(best) <= max_after[attach]) continue;
    if (Contains(e, best)) continue;
    out->push_back(best);
  }
}

void Extender::EdgeChildren(std::span<const EdgeId> e, std::vector<ElementId>* out) {
  const std::size_t k = e.size();
  touch_scratch_.clear();
  auto touch = [&](VertexId u, int pos) {
    for (const auto& [w, p] : touch_scratch_) {
      if (w == u) return;
    }
    touch_scratch_.emplace_back(u, pos);
  };
  for (std::size_t i = 0; i < k; ++i) {
    auto [u, v] = g_.EdgeEndpoints(e[i]);
    touch(u, static_cast<int>(i));
    touch(v, static_cast<int>(i));
  }
  edge_scratch_.clear();
  for (const auto& [u, pos] : touch_scratch_) {
    auto inc = g_.IncidentEdges(u);
    for (EdgeId x : inc) {
      if (x > e[0]) edge_scratch_.emplace_back(x, pos);
    }
  }
  std::sort(edge_scratch_.begin(), edge_scratch_.end());
  std::array<std::int64_t, kMaxEmbeddingSize> max_after{};
  max_after[k - 1] = -1;
  for (std::size_t a = k - 1; a-- > 0;) {
    max_after[a] = std::max<std::int64_t>(max_after[a + 1], e[a + 1]);
  }
  for (std::size_t i = 0; i < edge_scratch_.size(); ++i) {
    if (i > 0 && edge_scratch_[i].first == edge_scratch_[i - 1].first) continue;
    auto [x, attach] = edge_scratch_[i];
    if (static_cast<std::int64_t>(x) <= max_after[attach]) continue;
    if (Contains(e, x)) continue;
    out->push_back(x);
  }
}

std::uint64_t Extender::PredictCandidates(std::span<const ElementId> e) {
  if (kind_ == EmbeddingKind::kEdgeInduced) return PredictEdge(e);
  const std::size_t k = e.size();
  const VertexId last = e[k - 1];
  if (k == 1) return g_.Degree(last);
  auto prefix = e.first(k - 1);
  if (!cache_valid_ || !std::equal(prefix.begin(), prefix.end(), cached_prefix_.begin(),
                                   cached_prefix_.end())) {
    cached_prefix_.assign(prefix.begin(), prefix.end());
    NeighborUnion(g_, prefix, &cached_candidates_);
    cache_valid_ = true;
  }
  // |C(prefix) U N(last)|, minus members of the prefix found in N(last), minus
  // `last` itself (which is in C(prefix)).
  auto nbrs = g_.Neighbors(last);
  const auto& c = cached_candidates_;
  std::uint64_t merged = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < c.size() && j < nbrs.size()) {
    if (c[i] < nbrs[j]) {
      ++i;
    } else if (nbrs[j] < c[i]) {
      ++j;
    } else {
      ++i;
      ++j;
    }
    ++merged;
  }
  merged += (c.size() - i) + (nbrs.size() - j);
  std::uint64_t in_prefix = 0;
  for (VertexId p : prefix) in_prefix += g_.CheckLink(p, last) ? 1 : 0;
  return merged - in_prefix - 1;
}

std::uint64_t Extender::PredictEdge(std::span<const EdgeId> e) {
  std::array<VertexId, 2 * kMaxEmbeddingSize> verts{};
  std::size_t n = 0;
  for (EdgeId x : e) {
    auto [u, v] = g_.EdgeEndpoints(x);
    for (VertexId w : {u, v}) {
      if (std::find(verts.begin(), verts.begin() + n, w) == verts.begin() + n) verts[n++] = w;
    }
  }
  std::uint64_t degree_sum = 0;
  for (std::size_t i = 0; i < n; ++i) degree_sum += g_.Degree(verts[i]);
  std::uint64_t internal = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) internal += g_.CheckLink(verts[i], verts[j]) ? 1 : 0;
  }
  return degree_sum - internal - e.size();
}

void Extender::ExpandRange(const EmbeddingSource& source, std::uint64_t begin, std::uint64_t end,
                           const ExploreFilters& filters, LevelBuffer* out) {
  const std::size_t k = source.length();
  if (k + 1 > static_cast<std::size_t>(kMaxEmbeddingSize)) {
    throw SizeLimitError("embedding length exceeds " + std::to_string(kMaxEmbeddingSize));
  }
  std::array<ElementId, kMaxEmbeddingSize> buf{};
  std::span<ElementId> e(buf.data(), k);
  for (std::uint64_t i = begin; i < end; ++i) {
    source.Extract(i, e);
    if (!filters.parent || filters.parent(e)) {
      CanonicalChildren(e, &children_);
      for (ElementId c : children_) {
        if (!filters.candidate || filters.candidate(e, c)) out->vert.push_back(c);
      }
    }
    out->off.push_back(out->vert.size());
  }
}

void Extender::PredictRange(const EmbeddingSource& source, std::uint64_t begin, std::uint64_t end,
                            std::span<std::uint64_t> out) {
  const std::size_t k = source.length();
  std::array<ElementId, kMaxEmbeddingSize> buf{};
  std::span<ElementId> e(buf.data(), k);
  for (std::uint64_t i = begin; i < end; ++i) {
    source.Extract(i, e);
    out[i - begin] = PredictCandidates(e);
  }
}

std::uint64_t PredictCandidateSize(const Graph& g, const Cse& cse, std::size_t level,
                                   std::uint64_t offset) {
  Extender ext(g, cse.kind());
  auto e = cse.ExtractEmbedding(level, offset);
  return ext.PredictCandidates(e);
}

std::vector<std::uint64_t> PredictLevel(const Graph& g, const Cse& cse, std::size_t level,
                                        int workers) {
  ResidentLevelSource source(cse, level);
  std::vector<std::uint64_t> preds(source.size());
  auto bounds = EvenSplit(0, source.size(), workers);
  RunWorkers(workers, [&](int w) {
    Extender ext(g, cse.kind());
    ext.PredictRange(source, bounds[w], bounds[w + 1],
                     std::span(preds).subspan(bounds[w], bounds[w + 1] - bounds[w]));
  });
  return preds;
}

LevelBuffer ExploreLevel(const Graph& g, const Cse& cse, const ExploreFilters& filters,
                         int workers) {
  if (workers < 1) workers = 1;
  ResidentLevelSource source(cse, cse.depth());
  auto preds = PredictLevel(g, cse, cse.depth(), workers);
  auto bounds = PartitionByWeight(preds, workers);
  std::vector<LevelBuffer> parts(workers);
  RunWorkers(workers, [&](int w) {
    Extender ext(g, cse.kind());
    ext.ExpandRange(source, bounds[w], bounds[w + 1], filters, &parts[w]);
  });
  LevelBuffer result;
  std::size_t total = 0;
  for (const auto& p : parts) total += p.vert.size();
  result.vert.reserve(total);
  result.off.reserve(source.size() + 1);
  for (const auto& p : parts) {
    const Offset base = result.vert.size();
    result.vert.insert(result.vert.end(), p.vert.begin(), p.vert.end());
    for (std::size_t i = 1; i < p.off.size(); ++i) result.off.push_back(base + p.off[i]);
  }
  return result;
}

void InitLevel(const Graph& g, Cse* cse) {
  if (cse->kind() == EmbeddingKind::kVertexInduced) {
    cse->InitIdentity(g.num_vertices());
  } else {
    cse->InitIdentity(g.num_edges());
  }
}

}  // namespace kaleido
