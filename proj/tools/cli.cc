//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "cli.h"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <vector>

#include <CLI11.hpp>

#include "kaleido/common.h"
#include "kaleido/graph.h"
#include "kaleido/mining.h"
#include "kaleido/partition.h"

namespace kaleido::cli {

std::uint64_t ParseByteSize(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw ConfigError("empty memory budget");
  std::uint64_t scale = 1;
  switch (std::toupper(static_cast<unsigned char>(s.back()))) {
    case 'K':
      scale = 1ull << 10;
      break;
    case 'M':
      scale = 1ull << 20;
      break;
    case 'G':
      scale = 1ull << 30;
      break;
    default:
      break;
  }
  if (scale != 1) s.pop_back();
  const bool plain = std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == '.';
  });
  if (!plain) throw ConfigError("invalid byte size '" + std::string(text) + "'");
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || s.empty() || !(value >= 0) || std::isinf(value)) {
    throw ConfigError("invalid byte size '" + std::string(text) + "'");
  }
  return static_cast<std::uint64_t>(std::llround(value * scale));
}

void Validate(const RunConfig& config) {
  if (config.app == "motif") {
    if (config.k < kMinMotifSize || config.k > kMaxMotifSize) {
      throw ConfigError("motif: --k must be in [3, 5]");
    }
  } else if (config.app == "clique") {
    if (config.k < kMinCliqueSize || config.k > kMaxCliqueSize) {
      throw ConfigError("clique: --k must be in [3, 8]");
    }
  } else if (config.app == "fsm") {
    if (config.k < kMinFsmEdges || config.k > kMaxFsmEdges) {
      throw ConfigError("fsm: --k (pattern edges) must be in [1, 7]");
    }
    if (config.support < 1) throw ConfigError("fsm: --support must be at least 1");
  } else if (config.app != "tc") {
    throw ConfigError("unknown app '" + config.app + "'");
  }
  if (config.workers < 1) throw ConfigError("--workers must be at least 1");
  if (config.graph_path.empty()) throw ConfigError("--graph is required");
}

int Run(const RunConfig& config, std::ostream& out, std::ostream& metrics) {
  Validate(config);
  const auto start = std::chrono::steady_clock::now();
  Graph g = LoadGraph(config.graph_path, config.label_path);
  const double load_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  EngineOptions options;
  options.workers = config.workers;
  options.memory_budget = config.memory_budget;
  options.spill_dir = config.spill_dir;

  MiningResult result;
  if (config.app == "motif") {
    result = MotifCount(g, config.k, options);
  } else if (config.app == "clique") {
    result = CliqueDiscovery(g, config.k, options);
  } else if (config.app == "tc") {
    result = TriangleCount(g, options);
  } else {
    result = Fsm(g, config.k, config.support, options);
  }
  result.phases.insert(result.phases.begin(), PhaseTiming{"load", load_seconds});

  if (config.output_path) {
    std::ofstream file(*config.output_path, std::ios::trunc);
    if (!file) throw StorageError("cannot open " + config.output_path->string());
    WriteResult(result, file);
    file.flush();
    if (!file) throw StorageError("write failed for " + config.output_path->string());
  } else {
    WriteResult(result, out);
  }
  metrics << "app=" << config.app << "\n";
  metrics << "workers=" << config.workers << "\n";
  metrics << "memory_budget=" << config.memory_budget << "\n";
  metrics << "vertices=" << g.num_vertices() << "\n";
  metrics << "edges=" << g.num_edges() << "\n";
  WriteMetrics(result, metrics);
  return 0;
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app("Subgraph mining over canonical embeddings");
  RunConfig config;
  config.workers = DefaultWorkerCount();
  std::string budget = "0";
  std::string graph;
  std::string labels;
  std::string spill_dir;
  std::string output;
  app.add_option("--app", config.app, "Application: fsm, motif, clique or tc")
      ->required()
      ->check(CLI::IsMember({"fsm", "motif", "clique", "tc"}));
  app.add_option("--k", config.k, "Pattern size (vertices; edges for fsm)");
  app.add_option("--support", config.support, "Minimum-image support threshold (fsm)");
  app.add_option("--graph", graph, "Edge list file")->required();
  app.add_option("--labels", labels, "Vertex label file");
  app.add_option("--workers", config.workers, "Worker threads");
  app.add_option("--memory-budget", budget, "Memory budget, e.g. 512M; 0 = unlimited");
  app.add_option("--spill-dir", spill_dir, "Directory for spilled levels");
  app.add_option("--output", output, "Result file (default: standard output)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    config.graph_path = graph;
    if (!labels.empty()) config.label_path = labels;
    if (!output.empty()) config.output_path = output;
    config.memory_budget = ParseByteSize(budget);
    if (!spill_dir.empty()) {
      config.spill_dir = spill_dir;
    } else if (const char* env = std::getenv("KALEIDO_SPILL_DIR"); env != nullptr && *env) {
      config.spill_dir = env;
    }
    return Run(config, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace kaleido::cli
