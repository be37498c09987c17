//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

// Acceptance checks. Usage: kaleido_acceptance [criterion...]
// Prints one "CRITERION n: PASS|FAIL|SKIP - detail" line per criterion and
// exits 0 when all pass, 77 when every selected criterion was skipped, and 1
// otherwise.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "kaleido/explorer.h"
#include "kaleido/graph.h"
#include "kaleido/hybrid_storage.h"
#include "kaleido/isomorphism.h"
#include "kaleido/mining.h"
#include "kaleido/partition.h"
#include "oracles.h"

namespace kaleido::acceptance {
namespace {

namespace fs = std::filesystem;

enum class Status { kPass, kFail, kSkip };

struct Outcome {
  Status status = Status::kPass;
  std::string detail;
};

Outcome Pass(std::string detail) { return {Status::kPass, std::move(detail)}; }
Outcome Fail(std::string detail) { return {Status::kFail, std::move(detail)}; }
Outcome Skip(std::string detail) { return {Status::kSkip, std::move(detail)}; }

double Seconds(const std::function<void()>& fn) {
  const auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string Fixed(double value, int digits = 2) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(digits);
  out << value;
  return out.str();
}

std::string ResultText(const MiningResult& r) {
  std::ostringstream out;
  WriteResult(r, out);
  return out.str();
}

// Shared corpus of random connected graphs with at most 30 vertices.
std::vector<Graph> SmallCorpus() {
  std::mt19937_64 rng(20260);
  std::vector<Graph> corpus;
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 5 + i % 26;
    const double degree = 2.0 + (i % 7) * 0.5;
    const double p = std::min(1.0, degree / static_cast<double>(n - 1));
    corpus.push_back(oracle::RandomConnectedGraph(rng, n, p));
  }
  return corpus;
}

// Synthetic graph with 10^5 edges and four vertex labels.
const Graph& LargeGraph() {
  static const Graph g = [] {
    std::mt19937_64 rng(7);
    return oracle::RandomGraphWithEdges(rng, 25000, 100000, 4);
  }();
  return g;
}

constexpr int kFsmEdges = 3;
constexpr std::uint64_t kFsmSupport = 100;

// --- 1 ------------------------------------------------------------------------

Outcome ExampleExample() {
  Graph g = oracle::ExampleGraph();
  auto motifs = MotifCount(g, 3);
  std::uint64_t chains = 0;
  std::uint64_t triangles = 0;
  for (const auto& [hash, entry] : motifs.patterns.entries()) {
    (entry.pattern.EdgeCount() == 2 ? chains : triangles) += entry.value;
  }
  const std::uint64_t tc = TriangleCount(g).count;
  const std::uint64_t cliques = CliqueDiscovery(g, 3).count;
  std::string detail = "chain=" + std::to_string(chains) + " triangle=" +
                       std::to_string(triangles) + " tc=" + std::to_string(tc) +
                       " 3-clique=" + std::to_string(cliques);
  const bool ok = motifs.patterns.size() == 2 && chains == 5 && triangles == 3 && tc == 3 &&
                  cliques == 3;
  return ok ? Pass(detail) : Fail(detail);
}

// --- 2 ------------------------------------------------------------------------

struct IsoClass {
  oracle::SmallGraph rep;
  std::uint64_t count = 0;
};

// Connected induced k-subgraphs grouped by backtracking isomorphism tests.
std::vector<IsoClass> OracleMotifs(const Graph& g, int k) {
  std::vector<IsoClass> classes;
  oracle::ForEachConnectedSubset(g, k, [&](const std::vector<VertexId>& s) {
    oracle::SmallGraph sub = oracle::Induced(g, s, true);
    for (auto& c : classes) {
      if (oracle::Isomorphic(c.rep, sub)) {
        ++c.count;
        return;
      }
    }
    classes.push_back({sub, 1});
  });
  return classes;
}

Outcome MotifOracle() {
  auto corpus = SmallCorpus();
  std::uint64_t checked = 0;
  std::uint64_t embeddings = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    for (int k = 3; k <= 5; ++k) {
      auto engine = MotifCount(corpus[i], k);
      auto oracle_classes = OracleMotifs(corpus[i], k);
      std::vector<bool> matched(oracle_classes.size(), false);
      for (const auto& [hash, entry] : engine.patterns.entries()) {
        oracle::SmallGraph s = oracle::FromPattern(entry.pattern);
        bool found = false;
        for (std::size_t c = 0; c < oracle_classes.size(); ++c) {
          if (!matched[c] && oracle::Isomorphic(oracle_classes[c].rep, s)) {
            if (oracle_classes[c].count != entry.value) {
              return Fail("graph " + std::to_string(i) + " k=" + std::to_string(k) +
                          ": class count " + std::to_string(entry.value) + " != oracle " +
                          std::to_string(oracle_classes[c].count));
            }
            matched[c] = found = true;
            break;
          }
        }
        if (!found) {
          return Fail("graph " + std::to_string(i) + " k=" + std::to_string(k) +
                      ": engine class missing from oracle");
        }
      }
      if (std::find(matched.begin(), matched.end(), false) != matched.end()) {
        return Fail("graph " + std::to_string(i) + " k=" + std::to_string(k) +
                    ": oracle class missing from engine");
      }
      embeddings += engine.patterns.Total();
      ++checked;
    }
  }
  return Pass(std::to_string(corpus.size()) + " graphs, " + std::to_string(checked) +
              " (graph,k) runs, " + std::to_string(embeddings) + " embeddings");
}

// --- 3 ------------------------------------------------------------------------

Outcome CliqueTriangleOracle() {
  auto corpus = SmallCorpus();
  std::uint64_t cliques = 0;
  std::uint64_t triangles = 0;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const std::uint64_t tc = TriangleCount(corpus[i]).count;
    const std::uint64_t want_tc = oracle::BruteTriangles(corpus[i]);
    if (tc != want_tc) {
      return Fail("graph " + std::to_string(i) + ": tc " + std::to_string(tc) + " != " +
                  std::to_string(want_tc));
    }
    triangles += tc;
    for (int k = 3; k <= 5; ++k) {
      const std::uint64_t got = CliqueDiscovery(corpus[i], k).count;
      const std::uint64_t want = oracle::BruteCliques(corpus[i], k);
      if (got != want) {
        return Fail("graph " + std::to_string(i) + " k=" + std::to_string(k) + ": " +
                    std::to_string(got) + " != " + std::to_string(want));
      }
      cliques += got;
    }
  }
  return Pass(std::to_string(corpus.size()) + " graphs, " + std::to_string(triangles) +
              " triangles, " + std::to_string(cliques) + " cliques (k=3..5)");
}

// --- 4 ------------------------------------------------------------------------

// Random connected vertex set of the given size, grown from a random seed.
std::vector<VertexId> RandomConnectedSet(std::mt19937_64& rng, const Graph& g, std::size_t size) {
  std::vector<VertexId> set = {static_cast<VertexId>(rng() % g.num_vertices())};
  while (set.size() < size) {
    std::vector<VertexId> frontier;
    NeighborUnion(g, set, &frontier);
    if (frontier.empty()) return {};
    set.push_back(frontier[rng() % frontier.size()]);
  }
  return set;
}

std::vector<EdgeId> RandomConnectedEdgeSet(std::mt19937_64& rng, const Graph& g,
                                           std::size_t size) {
  std::vector<EdgeId> set = {static_cast<EdgeId>(rng() % g.num_edges())};
  while (set.size() < size) {
    std::vector<EdgeId> frontier;
    for (EdgeId e : set) {
      auto [u, v] = g.EdgeEndpoints(e);
      for (VertexId w : {u, v}) {
        for (EdgeId x : g.IncidentEdges(w)) {
          if (std::find(set.begin(), set.end(), x) == set.end()) frontier.push_back(x);
        }
      }
    }
    if (frontier.empty()) return {};
    set.push_back(frontier[rng() % frontier.size()]);
  }
  return set;
}

Outcome CanonicalUniqueness() {
  std::mt19937_64 rng(404);
  std::uint64_t vertex_sets = 0;
  std::uint64_t edge_sets = 0;
  std::uint64_t orderings = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    Graph g = oracle::RandomConnectedGraph(rng, 12 + trial % 20, 0.25);
    auto set = RandomConnectedSet(rng, g, 1 + trial % 7);
    if (set.empty()) continue;
    std::sort(set.begin(), set.end());
    int passing = 0;
    do {
      const bool engine = IsCanonicalSequence(g, set);
      if (engine != oracle::CanonicalOrder(g, set)) {
        return Fail("vertex predicate disagrees with its definition on trial " +
                    std::to_string(trial));
      }
      passing += engine ? 1 : 0;
      ++orderings;
    } while (std::next_permutation(set.begin(), set.end()));
    if (passing != 1) {
      return Fail("vertex set of size " + std::to_string(set.size()) + " has " +
                  std::to_string(passing) + " canonical orderings");
    }
    ++vertex_sets;
  }
  for (int trial = 0; trial < 1500; ++trial) {
    Graph g = oracle::RandomConnectedGraph(rng, 8 + trial % 12, 0.3);
    auto set = RandomConnectedEdgeSet(rng, g, 1 + trial % 5);
    if (set.empty()) continue;
    std::sort(set.begin(), set.end());
    int passing = 0;
    do {
      const bool engine = IsCanonicalEdgeSequence(g, set);
      if (engine != oracle::CanonicalEdgeOrder(g, set)) {
        return Fail("edge predicate disagrees with its definition on trial " +
                    std::to_string(trial));
      }
      passing += engine ? 1 : 0;
      ++orderings;
    } while (std::next_permutation(set.begin(), set.end()));
    if (passing != 1) {
      return Fail("edge set of size " + std::to_string(set.size()) + " has " +
                  std::to_string(passing) + " canonical orderings");
    }
    ++edge_sets;
  }
  return Pass(std::to_string(vertex_sets) + " vertex sets (<=7), " + std::to_string(edge_sets) +
              " edge sets (<=5), " + std::to_string(orderings) + " orderings");
}

// --- 5 ------------------------------------------------------------------------

bool SameTriple(const PatternKey& a, const PatternKey& b) {
  const int k = a.pattern.k;
  if (k != b.pattern.k) return false;
  for (int i = 0; i < k; ++i) {
    if (a.pattern.labels[i] != b.pattern.labels[i] ||
        a.pattern.degrees[i] != b.pattern.degrees[i]) {
      return false;
    }
  }
  return a.poly == b.poly;
}

Outcome HashSoundness() {
  std::mt19937_64 rng(505);
  constexpr int kPairs = 100000;
  int done = 0;
  while (done < kPairs) {
    const Label labels = 1 + rng() % 4;
    Graph g = oracle::RandomConnectedGraph(rng, 30, 0.15, labels);
    for (int rep = 0; rep < 500 && done < kPairs; ++rep) {
      auto e = RandomConnectedSet(rng, g, 1 + rng() % kMaxPatternVertices);
      if (e.empty()) continue;
      std::shuffle(e.begin(), e.end(), rng);
      auto relabeled = e;
      std::shuffle(relabeled.begin(), relabeled.end(), rng);
      PatternKey a = EigenHash(g, e);
      PatternKey b = EigenHash(g, relabeled);
      if (!SameTriple(a, b) || a.hash != b.hash) {
        return Fail("triples differ for a relabeled " + std::to_string(e.size()) +
                    "-vertex embedding");
      }
      ++done;
    }
  }
  return Pass(std::to_string(done) + " pairs, k<=8, <=4 labels");
}

// --- 6 and 7 ------------------------------------------------------------------

struct Family {
  int n;
  Label labels;
};

// Connected graphs up to 7 vertices unlabeled, and up to 5 with 2 labels.
std::vector<std::pair<Family, std::vector<oracle::SmallGraph>>> ExhaustiveFamilies() {
  std::vector<std::pair<Family, std::vector<oracle::SmallGraph>>> out;
  for (int n = 1; n <= 7; ++n) out.push_back({{n, 1}, oracle::AllConnectedGraphs(n, 1)});
  for (int n = 1; n <= 5; ++n) out.push_back({{n, 2}, oracle::AllConnectedGraphs(n, 2)});
  return out;
}

Outcome TripleCompleteness() {
  std::mt19937_64 rng(606);
  std::uint64_t graphs = 0;
  std::uint64_t pairs = 0;
  for (const auto& [family, reps] : ExhaustiveFamilies()) {
    const Label max_label = family.labels - 1;
    std::vector<PatternKey> keys;
    for (const auto& rep : reps) {
      PatternKey key = HashPattern(oracle::ToPattern(rep), max_label);
      // Isomorphic copies must produce the same triple.
      for (int t = 0; t < 5; ++t) {
        std::vector<int> perm(rep.n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        if (!SameTriple(key, HashPattern(oracle::ToPattern(oracle::Permute(rep, perm)), max_label))) {
          return Fail("isomorphic copies of a " + std::to_string(rep.n) +
                      "-vertex graph have different triples");
        }
      }
      keys.push_back(key);
    }
    for (std::size_t a = 0; a < reps.size(); ++a) {
      for (std::size_t b = a + 1; b < reps.size(); ++b) {
        ++pairs;
        const bool iso = oracle::Isomorphic(reps[a], reps[b]);
        if (SameTriple(keys[a], keys[b]) != iso) {
          return Fail("triple equality and isomorphism disagree for two " +
                      std::to_string(family.n) + "-vertex graphs with " +
                      std::to_string(family.labels) + " label(s)");
        }
      }
    }
    graphs += reps.size();
  }

  // A cospectral pair on 6 vertices: same unweighted spectrum, not isomorphic.
  const auto six = oracle::AllConnectedGraphs(6, 1);
  int cospectral = 0;
  int split_by_degree = 0;
  for (std::size_t a = 0; a < six.size(); ++a) {
    PatternKey ka = HashPattern(oracle::ToPattern(six[a]), 0);
    for (std::size_t b = a + 1; b < six.size(); ++b) {
      PatternKey kb = HashPattern(oracle::ToPattern(six[b]), 0);
      if (!(ka.poly == kb.poly) || oracle::Isomorphic(six[a], six[b])) continue;
      ++cospectral;
      if (!std::equal(ka.pattern.degree_span().begin(), ka.pattern.degree_span().end(),
                      kb.pattern.degree_span().begin())) {
        ++split_by_degree;
      }
    }
  }
  std::string detail = std::to_string(graphs) + " classes, " + std::to_string(pairs) +
                       " pairs; 6-vertex cospectral pairs=" + std::to_string(cospectral) +
                       ", distinguished by degrees=" + std::to_string(split_by_degree);
  if (cospectral == 0 || split_by_degree == 0) return Fail(detail);
  return Pass(detail);
}

Outcome CharPolyExactness() {
  std::uint64_t matrices = 0;
  for (const auto& [family, reps] : ExhaustiveFamilies()) {
    const Label max_label = family.labels - 1;
    for (const auto& rep : reps) {
      Pattern p = oracle::ToPattern(rep);
      CanonicalSort(&p);
      WeightMatrix w = WeightedAdjMatrix(p, max_label);
      std::vector<std::vector<std::int64_t>> m(w.k, std::vector<std::int64_t>(w.k));
      for (int i = 0; i < w.k; ++i) {
        for (int j = 0; j < w.k; ++j) m[i][j] = w.m[i][j];
      }
      CharPoly poly;
      try {
        poly = CharPolynomial(w);
      } catch (const std::exception& e) {
        return Fail(std::string("inexact or overflowing computation: ") + e.what());
      }
      auto want = oracle::CofactorCharPoly(m);
      for (int i = 0; i < w.k; ++i) {
        if (poly.coeffs[i] != want[i + 1]) {
          return Fail("coefficient " + std::to_string(i + 1) + " differs for a " +
                      std::to_string(w.k) + "x" + std::to_string(w.k) + " matrix");
        }
      }
      ++matrices;
    }
  }
  return Pass(std::to_string(matrices) + " weighted matrices, all trace divisions exact");
}

// --- 8 ------------------------------------------------------------------------

Outcome CiteSeerLevels() {
  const char* path = std::getenv("KALEIDO_CITESEER_GRAPH");
  if (path == nullptr || !fs::exists(path)) {
    return Skip("CiteSeer edge list not available (set KALEIDO_CITESEER_GRAPH); "
                "level counts are covered by the criterion 2 corpus instead");
  }
  Graph g = LoadGraph(path);
  HybridStore store(g, EmbeddingKind::kVertexInduced, {DefaultWorkerCount(), 0, {}, 0});
  store.Init();
  while (store.depth() < 5) store.Explore();
  auto counts = store.metrics().level_counts;
  // Exact first two levels, then values rounded to the displayed precision.
  const std::uint64_t exact[2] = {3312, 4536};
  const double rounded[3] = {24.5e3, 352.2e3, 7.7e6};
  const double unit[3] = {1e3, 1e3, 1e6};
  std::string detail;
  for (auto c : counts) detail += std::to_string(c) + " ";
  bool ok = counts[0] == exact[0] && counts[1] == exact[1];
  for (int i = 0; i < 3; ++i) {
    ok = ok && std::abs(static_cast<double>(counts[i + 2]) - rounded[i]) <= 0.05 * unit[i];
  }
  return ok ? Pass(detail) : Fail(detail);
}

// --- 9 ------------------------------------------------------------------------

struct TimedRun {
  std::string text;
  double seconds = 0;
  StorageMetrics storage;
};

TimedRun RunApp(const std::string& app, std::uint64_t budget, int workers,
                const fs::path& spill_dir) {
  EngineOptions o;
  o.workers = workers;
  o.memory_budget = budget;
  o.spill_dir = spill_dir;
  MiningResult r;
  TimedRun run;
  run.seconds = Seconds([&] {
    r = app == "motif" ? MotifCount(LargeGraph(), 4, o)
                       : Fsm(LargeGraph(), kFsmEdges, kFsmSupport, o);
  });
  run.text = ResultText(r);
  run.storage = r.storage;
  return run;
}

Outcome SpillTransparency() {
  const fs::path dir = fs::temp_directory_path() / ("kaleido-acceptance-" +
                                                   std::to_string(std::random_device{}()));
  fs::create_directories(dir);
  std::string detail = "graph |V|=" + std::to_string(LargeGraph().num_vertices()) +
                       " |E|=" + std::to_string(LargeGraph().num_edges()) + ";";
  bool ok = true;
  for (const std::string app : {"motif", "fsm"}) {
    TimedRun unlimited = RunApp(app, 0, 1, dir);
    const std::uint64_t peak = unlimited.storage.peak_resident_bytes;
    {
      std::ofstream(dir / (app + "-unlimited.txt"), std::ios::binary) << unlimited.text;
    }
    detail += " " + app + ": peak=" + std::to_string(peak) + "B t=" + Fixed(unlimited.seconds) + "s";
    for (int percent : {50, 25}) {
      const std::uint64_t budget = peak * percent / 100;
      TimedRun limited = RunApp(app, budget, 1, dir);
      const fs::path file = dir / (app + "-" + std::to_string(percent) + ".txt");
      { std::ofstream(file, std::ios::binary) << limited.text; }
      std::ifstream a(dir / (app + "-unlimited.txt"), std::ios::binary);
      std::ifstream b(file, std::ios::binary);
      const std::string bytes_a((std::istreambuf_iterator<char>(a)), {});
      const std::string bytes_b((std::istreambuf_iterator<char>(b)), {});
      const bool same = bytes_a == bytes_b;
      const double ratio = limited.seconds / unlimited.seconds;
      detail += ", " + std::to_string(percent) + "%: spilled=" +
                std::to_string(limited.storage.bytes_spilled) + "B t=" + Fixed(limited.seconds) +
                "s x" + Fixed(ratio) + (same ? " identical" : " DIFFERENT");
      ok = ok && same && limited.storage.bytes_spilled > 0;
      if (percent == 25) ok = ok && ratio <= 2.0;
    }
    detail += ";";
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return ok ? Pass(detail) : Fail(detail);
}

// --- 10 -----------------------------------------------------------------------

Outcome LoadBalance() {
  constexpr std::size_t kParts = 8;
  std::uint64_t levels = 0;
  double worst = 0;
  auto check = [&](const Graph& g, EmbeddingKind kind, std::size_t depth) -> bool {
    HybridStore store(g, kind, {});
    store.Init();
    for (std::size_t level = 1; level <= depth; ++level) {
      auto preds = PredictLevel(g, store.cse(), level);
      auto bounds = PartitionByWeight(preds, kParts);
      const std::uint64_t total = std::accumulate(preds.begin(), preds.end(), 0ull);
      const std::uint64_t max_single = preds.empty() ? 0 : *std::max_element(preds.begin(), preds.end());
      const double bound = static_cast<double>(total) / kParts + max_single;
      for (std::size_t p = 0; p < kParts; ++p) {
        const std::uint64_t part = std::accumulate(preds.begin() + bounds[p],
                                                   preds.begin() + bounds[p + 1], 0ull);
        if (part > bound) return false;
        if (bound > 0) worst = std::max(worst, part / bound);
      }
      ++levels;
      if (level < depth) store.Explore();
    }
    return true;
  };
  if (!check(LargeGraph(), EmbeddingKind::kVertexInduced, 3) ||
      !check(LargeGraph(), EmbeddingKind::kEdgeInduced, 2)) {
    return Fail("bound violated on the large graph");
  }
  for (const auto& g : SmallCorpus()) {
    if (!check(g, EmbeddingKind::kVertexInduced, 4) || !check(g, EmbeddingKind::kEdgeInduced, 3)) {
      return Fail("bound violated on the small corpus");
    }
  }
  return Pass(std::to_string(levels) + " levels, worst part/bound=" + Fixed(worst, 3));
}

// --- 11 -----------------------------------------------------------------------

Outcome DeterminismScaling() {
  const fs::path dir = fs::temp_directory_path();
  std::string detail = "hardware threads=" + std::to_string(std::thread::hardware_concurrency()) +
                       ";";
  bool identical = true;
  std::string motif_ref;
  std::string fsm_ref;
  std::vector<double> times;
  for (int workers : {1, 2, 8}) {
    TimedRun motif = RunApp("motif", 0, workers, dir);
    TimedRun again = RunApp("motif", 0, workers, dir);
    TimedRun fsm = RunApp("fsm", 0, workers, dir);
    if (workers == 1) {
      motif_ref = motif.text;
      fsm_ref = fsm.text;
    }
    identical = identical && motif.text == motif_ref && again.text == motif_ref &&
                fsm.text == fsm_ref;
    const double best = std::min(motif.seconds, again.seconds);
    times.push_back(best);
    detail += " 4-motif t" + std::to_string(workers) + "=" + Fixed(best) + "s";
  }
  // Each step must beat timing noise, taken as 5% of the previous time.
  bool monotone = true;
  for (std::size_t i = 1; i < times.size(); ++i) {
    monotone = monotone && times[i] < 0.95 * times[i - 1];
  }
  detail += std::string("; results ") + (identical ? "identical" : "DIFFER") + ", wall time " +
            (monotone ? "decreasing" : "NOT decreasing");
  return identical && monotone ? Pass(detail) : Fail(detail);
}

// -----------------------------------------------------------------------------

const std::map<int, std::function<Outcome()>>& Criteria() {
  static const std::map<int, std::function<Outcome()>> criteria = {
      {1, ExampleExample},        {2, MotifOracle},       {3, CliqueTriangleOracle},
      {4, CanonicalUniqueness}, {5, HashSoundness},    {6, TripleCompleteness},
      {7, CharPolyExactness},  {8, CiteSeerLevels},    {9, SpillTransparency},
      {10, LoadBalance},       {11, DeterminismScaling},
  };
  return criteria;
}

int Main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  if (selected.empty()) {
    for (const auto& [id, fn] : Criteria()) selected.push_back(id);
  }
  int passed = 0;
  int failed = 0;
  int skipped = 0;
  for (int id : selected) {
    auto it = Criteria().find(id);
    if (it == Criteria().end()) {
      std::cerr << "unknown criterion " << id << "\n";
      return 2;
    }
    Outcome outcome;
    try {
      outcome = it->second();
    } catch (const std::exception& e) {
      outcome = Fail(std::string("exception: ") + e.what());
    }
    const char* word = outcome.status == Status::kPass   ? "PASS"
                       : outcome.status == Status::kFail ? "FAIL"
                                                         : "SKIP";
    std::cout << "CRITERION " << id << ": " << word << " - " << outcome.detail << std::endl;
    passed += outcome.status == Status::kPass;
    failed += outcome.status == Status::kFail;
    skipped += outcome.status == Status::kSkip;
  }
  if (failed > 0) return 1;
  if (passed == 0 && skipped > 0) return 77;
  return 0;
}

}  // namespace
}  // namespace kaleido::acceptance

int main(int argc, char** argv) { return kaleido::acceptance::Main(argc, argv); }
