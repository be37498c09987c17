//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/mining.h"

#include <algorithm>
#include <array>
#include <chrono>
#include <unordered_set>

#include "kaleido/partition.h"

namespace kaleido {

namespace {

class PhaseClock {
 public:
  explicit PhaseClock(std::vector<PhaseTiming>* phases) : phases_(phases) {}

  void Lap(std::string name) {
    const auto now = std::chrono::steady_clock::now();
    phases_->push_back({std::move(name), std::chrono::duration<double>(now - last_).count()});
    last_ = now;
  }

 private:
  std::vector<PhaseTiming>* phases_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

void CheckRange(const char* app, const char* what, std::int64_t value, std::int64_t lo,
                std::int64_t hi) {
  if (value < lo || value > hi) {
    throw ConfigError(std::string(app) + ": " + what + " must be in [" + std::to_string(lo) +
                      ", " + std::to_string(hi) + "], got " + std::to_string(value));
  }
}

void ExploreTimed(HybridStore* store, std::size_t depth, const ExploreFilters& filters,
                  PhaseClock* clock) {
  while (store->depth() < depth) {
    store->Explore(filters);
    clock->Lap("explore_level_" + std::to_string(store->depth()));
  }
}

}  // namespace

PatternMap ResultAggregator(HybridStore* store, const AggregatingMapper& mapper,
                            const PatternFilter& filter) {
  std::vector<PatternMap> locals(store->workers());
  store->ForEachEmbedding(
      [&](int worker, std::span<const ElementId> e) { mapper(worker, e, &locals[worker]); });
  for (std::size_t stride = 1; stride < locals.size(); stride *= 2) {
    for (std::size_t i = 0; i + stride < locals.size(); i += 2 * stride) {
      locals[i].Merge(locals[i + stride]);
      locals[i + stride] = PatternMap();
    }
  }
  PatternMap result = std::move(locals.front());
  if (filter) result.Filter(filter);
  return result;
}

void EmbeddingsExplorer(HybridStore* store, std::size_t depth, const ExploreFilters& filters) {
  while (store->depth() < depth) store->Explore(filters);
}

MiningResult MotifCount(const Graph& g, int k, const EngineOptions& options) {
  CheckRange("motif", "k", k, kMinMotifSize, kMaxMotifSize);
  MiningResult result;
  result.app = "motif";
  PhaseClock clock(&result.phases);

  // Unlabeled patterns are determined by their adjacency bits, so every
  // possible k-vertex pattern is hashed once up front.
  const int pairs = k * (k - 1) / 2;
  struct Classified {
    std::uint64_t hash;
    Pattern canonical;
  };
  std::vector<Classified> table(std::size_t{1} << pairs);
  const std::array<Label, kMaxPatternVertices> zeros{};
  for (std::uint32_t bits = 0; bits < table.size(); ++bits) {
    Pattern p = Pattern::FromBits(k, std::span(zeros.data(), k), bits);
    table[bits] = {HashPattern(p, 0).hash, Canonicalize(p).canonical};
  }

  HybridStore store(g, EmbeddingKind::kVertexInduced, options);
  store.Init();
  clock.Lap("init");
  ExploreTimed(&store, k - 1, {}, &clock);

  std::vector<Extender> extenders;
  for (int w = 0; w < store.workers(); ++w) extenders.emplace_back(g, EmbeddingKind::kVertexInduced);
  std::vector<std::vector<ElementId>> children(store.workers());
  result.patterns = ResultAggregator(
      &store, [&](int w, std::span<const ElementId> e, PatternMap* local) {
        std::uint32_t parent_bits = 0;
        for (int i = 0; i < k - 1; ++i) {
          for (int j = i + 1; j < k - 1; ++j) {
            if (g.CheckLink(e[i], e[j])) parent_bits |= 1u << PairBit(k, i, j);
          }
        }
        extenders[w].CanonicalChildren(e, &children[w]);
        for (ElementId c : children[w]) {
          std::uint32_t bits = parent_bits;
          for (int i = 0; i < k - 1; ++i) {
            if (g.CheckLink(e[i], c)) bits |= 1u << PairBit(k, i, k - 1);
          }
          const Classified& cls = table[bits];
          local->Add(cls.hash, cls.canonical, 1);
        }
      });
  clock.Lap("aggregate");
  result.storage = store.metrics();
  return result;
}

MiningResult CliqueDiscovery(const Graph& g, int k, const EngineOptions& options) {
  CheckRange("clique", "k", k, kMinCliqueSize, kMaxCliqueSize);
  MiningResult result;
  result.kind = MiningResult::Kind::kCliques;
  result.app = "clique";
  PhaseClock clock(&result.phases);

  HybridStore store(g, EmbeddingKind::kVertexInduced, options);
  store.Init();
  clock.Lap("init");
  ExploreFilters filters;
  filters.candidate = [&g](std::span<const ElementId> e, ElementId v) {
    return std::all_of(e.begin(), e.end(), [&](ElementId u) { return g.CheckLink(u, v); });
  };
  ExploreTimed(&store, k, filters, &clock);
  result.count = store.top_count();
  result.storage = store.metrics();
  return result;
}

MiningResult TriangleCount(const Graph& g, const EngineOptions& options) {
  MiningResult result;
  result.kind = MiningResult::Kind::kTriangles;
  result.app = "tc";
  PhaseClock clock(&result.phases);

  HybridStore store(g, EmbeddingKind::kVertexInduced, options);
  store.Init();
  clock.Lap("init");
  ExploreTimed(&store, 2, {}, &clock);
  std::vector<std::uint64_t> counts(store.workers(), 0);
  store.ForEachEmbedding([&](int w, std::span<const ElementId> e) {
    auto a = g.Neighbors(e[0]);
    auto b = g.Neighbors(e[1]);
    auto i = std::upper_bound(a.begin(), a.end(), e[1]);
    auto j = std::upper_bound(b.begin(), b.end(), e[1]);
    std::uint64_t common = 0;
    while (i != a.end() && j != b.end()) {
      if (*i < *j) {
        ++i;
      } else if (*j < *i) {
        ++j;
      } else {
        ++common;
        ++i;
        ++j;
      }
    }
    counts[w] += common;
  });
  for (auto c : counts) result.count += c;
  clock.Lap("aggregate");
  result.storage = store.metrics();
  return result;
}

namespace {

// Per-worker state for classifying edge-induced embeddings.
struct FsmWorker {
  CanonicalCache cache;
  std::vector<VertexId> vertices;
  MniMap mni;
};

PatternKey EdgePatternKey(const Graph& g, std::span<const EdgeId> e,
                          std::vector<VertexId>* vertices) {
  Pattern p = InitEdgePattern(g, e, vertices);
  return HashPattern(p, g.max_label(), *vertices);
}

void AddEmbedding(const Graph& g, std::span<const EdgeId> e, std::uint64_t threshold,
                  FsmWorker* worker) {
  PatternKey key = EdgePatternKey(g, e, &worker->vertices);
  auto it = worker->mni.find(key.hash);
  const CanonicalForm& form = worker->cache.Get(key.pattern);
  if (it == worker->mni.end()) {
    it = worker->mni.emplace(key.hash, MniEntry{form.canonical, MniState(form.orbit_count, threshold)})
             .first;
  }
  MniState& state = it->second.state;
  if (state.frequent()) return;
  for (int pos = 0; pos < key.pattern.k; ++pos) {
    state.AddImage(form.orbit[pos], worker->vertices[pos]);
  }
}

MniMap MergeWorkers(std::vector<FsmWorker>* workers) {
  MniMap merged = std::move((*workers)[0].mni);
  for (std::size_t w = 1; w < workers->size(); ++w) {
    MergeMni(&merged, (*workers)[w].mni);
    (*workers)[w].mni.clear();
  }
  return merged;
}

std::unordered_set<std::uint64_t> FrequentHashes(const MniMap& mni) {
  std::unordered_set<std::uint64_t> out;
  for (const auto& [hash, entry] : mni) {
    if (entry.state.frequent()) out.insert(hash);
  }
  return out;
}

}  // namespace

MiningResult Fsm(const Graph& g, int k_edges, std::uint64_t support,
                 const EngineOptions& options) {
  CheckRange("fsm", "k", k_edges, kMinFsmEdges, kMaxFsmEdges);
  if (support < 1) throw ConfigError("fsm: support must be at least 1");
  MiningResult result;
  result.app = "fsm";
  PhaseClock clock(&result.phases);
  const int nworkers = std::max(1, options.workers);

  // Single-edge patterns over the whole edge set.
  std::vector<FsmWorker> workers(nworkers);
  auto bounds = EvenSplit(0, g.num_edges(), nworkers);
  RunWorkers(nworkers, [&](int w) {
    for (std::uint64_t x = bounds[w]; x < bounds[w + 1]; ++x) {
      const EdgeId edge = static_cast<EdgeId>(x);
      AddEmbedding(g, std::span(&edge, 1), support, &workers[w]);
    }
  });
  MniMap mni = MergeWorkers(&workers);
  auto frequent = FrequentHashes(mni);

  std::vector<char> frequent_edge(g.num_edges(), 0);
  std::vector<ElementId> base;
  {
    std::vector<VertexId> scratch;
    for (EdgeId x = 0; x < g.num_edges(); ++x) {
      if (frequent.count(EdgePatternKey(g, std::span(&x, 1), &scratch).hash)) {
        frequent_edge[x] = 1;
        base.push_back(x);
      }
    }
  }
  HybridStore store(g, EmbeddingKind::kEdgeInduced, options);
  store.InitBase(std::move(base));
  clock.Lap("init");

  for (int m = 2; m <= k_edges; ++m) {
    ExploreFilters filters;
    filters.candidate = [&](std::span<const ElementId>, ElementId x) {
      return frequent_edge[x] != 0;
    };
    if (m > 2) {
      filters.parent = [&](std::span<const ElementId> e) {
        thread_local std::vector<VertexId> scratch;
        return frequent.count(EdgePatternKey(g, e, &scratch).hash) != 0;
      };
    }
    store.Explore(filters);
    clock.Lap("explore_level_" + std::to_string(m));

    for (auto& w : workers) w = FsmWorker();
    store.ForEachEmbedding([&](int w, std::span<const ElementId> e) {
      AddEmbedding(g, e, support, &workers[w]);
    });
    mni = MergeWorkers(&workers);
    frequent = FrequentHashes(mni);
    clock.Lap("aggregate_level_" + std::to_string(m));
  }

  for (const auto& [hash, entry] : mni) {
    if (entry.state.frequent()) result.patterns.Add(hash, entry.pattern, entry.state.support());
  }
  result.storage = store.metrics();
  return result;
}

void WriteResult(const MiningResult& result, std::ostream& out) {
  switch (result.kind) {
    case MiningResult::Kind::kTriangles:
      out << "triangles: " << result.count << "\n";
      return;
    case MiningResult::Kind::kCliques:
      out << "cliques: " << result.count << "\n";
      return;
    case MiningResult::Kind::kPatterns:
      break;
  }
  for (const auto& [hash, entry] : result.patterns.entries()) {
    out << SerializePattern(entry.pattern) << '\t' << entry.value << "\n";
  }
  out << "# patterns=" << result.patterns.size() << " total=" << result.patterns.Total() << "\n";
}

void WriteMetrics(const MiningResult& result, std::ostream& out) {
  double total = 0;
  for (const auto& phase : result.phases) {
    out << "time_" << phase.name << "=" << phase.seconds << "\n";
    total += phase.seconds;
  }
  out << "time_total=" << total << "\n";
  const StorageMetrics& s = result.storage;
  out << "peak_resident_bytes=" << s.peak_resident_bytes << "\n";
  out << "bytes_spilled=" << s.bytes_spilled << "\n";
  out << "bytes_read=" << s.bytes_read << "\n";
  out << "parts_written=" << s.parts_written << "\n";
  for (std::size_t j = 0; j < s.level_counts.size(); ++j) {
    out << "level_" << j + 1 << "_embeddings=" << s.level_counts[j] << "\n";
    out << "level_" << j + 1 << "_spilled=" << (s.level_spilled[j] ? 1 : 0) << "\n";
  }
}

}  // namespace kaleido
