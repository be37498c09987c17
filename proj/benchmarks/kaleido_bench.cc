//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "kaleido/explorer.h"
#include "kaleido/graph.h"
#include "kaleido/hybrid_storage.h"
#include "kaleido/isomorphism.h"
#include "kaleido/mining.h"

namespace kaleido {
namespace {

Graph RandomGraph(std::size_t n, std::size_t m, Label labels, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::set<std::pair<VertexId, VertexId>> edges;
  while (edges.size() < m) {
    auto a = static_cast<VertexId>(rng() % n);
    auto b = static_cast<VertexId>(rng() % n);
    if (a != b) edges.emplace(std::min(a, b), std::max(a, b));
  }
  std::vector<Label> l(n);
  for (auto& x : l) x = static_cast<Label>(rng() % labels);
  std::vector<std::pair<VertexId, VertexId>> list(edges.begin(), edges.end());
  return Graph::FromEdges(n, list, std::move(l));
}

const Graph& BenchGraph() {
  static const Graph g = RandomGraph(20000, 80000, 4, 1);
  return g;
}

void BM_EigenHash(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Graph g = RandomGraph(64, 64 * 12, 4, 2);
  std::mt19937_64 rng(3);
  std::vector<std::vector<VertexId>> embeddings;
  for (int i = 0; i < 256; ++i) {
    std::vector<VertexId> e = {static_cast<VertexId>(rng() % 64)};
    while (static_cast<int>(e.size()) < k) {
      std::vector<VertexId> frontier;
      NeighborUnion(g, e, &frontier);
      e.push_back(frontier[rng() % frontier.size()]);
    }
    embeddings.push_back(std::move(e));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EigenHash(g, embeddings[i++ % embeddings.size()]).hash);
  }
}
BENCHMARK(BM_EigenHash)->DenseRange(3, 8);

void BM_Canonicalize(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Pattern p;
  p.k = k;
  for (int i = 1; i < k; ++i) p.Connect(i - 1, i);
  p.Connect(0, k - 1);
  for (auto _ : state) benchmark::DoNotOptimize(Canonicalize(p).orbit_count);
}
BENCHMARK(BM_Canonicalize)->DenseRange(3, 8);

void BM_ExploreLevel(benchmark::State& state) {
  const auto depth = static_cast<std::size_t>(state.range(0));
  const Graph& g = BenchGraph();
  std::uint64_t embeddings = 0;
  for (auto _ : state) {
    HybridStore store(g, EmbeddingKind::kVertexInduced, {});
    store.Init();
    while (store.depth() < depth) store.Explore();
    embeddings = store.top_count();
  }
  state.counters["embeddings"] = static_cast<double>(embeddings);
  state.counters["embeddings/s"] = benchmark::Counter(static_cast<double>(embeddings),
                                                      benchmark::Counter::kIsIterationInvariantRate);
}
BENCHMARK(BM_ExploreLevel)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_SpilledExplore(benchmark::State& state) {
  const Graph& g = BenchGraph();
  for (auto _ : state) {
    EngineOptions o;
    o.memory_budget = static_cast<std::uint64_t>(state.range(0)) << 20;
    HybridStore store(g, EmbeddingKind::kVertexInduced, o);
    store.Init();
    while (store.depth() < 3) store.Explore();
    std::uint64_t sum = 0;
    store.ForEachEmbedding([&](int, std::span<const ElementId> e) { sum += e.back(); });
    benchmark::DoNotOptimize(sum);
  }
}
BENCHMARK(BM_SpilledExplore)->Arg(0)->Arg(2)->Unit(benchmark::kMillisecond);

void BM_MotifCount(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  Graph g = RandomGraph(5000, 20000, 1, 4);
  for (auto _ : state) benchmark::DoNotOptimize(MotifCount(g, k).patterns.Total());
}
BENCHMARK(BM_MotifCount)->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Fsm(benchmark::State& state) {
  Graph g = RandomGraph(5000, 20000, 4, 5);
  for (auto _ : state) benchmark::DoNotOptimize(Fsm(g, 3, 20).patterns.size());
}
BENCHMARK(BM_Fsm)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace kaleido

BENCHMARK_MAIN();
