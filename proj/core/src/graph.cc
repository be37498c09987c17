//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "kaleido/graph.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>

namespace kaleido {

Graph Graph::FromEdges(std::size_t num_vertices,
                       std::span<const std::pair<VertexId, VertexId>> edges,
                       std::vector<Label> labels,
                       std::vector<std::uint64_t> original_ids) {
  if (num_vertices >= std::numeric_limits<VertexId>::max()) {
    throw Error("graph has too many vertices for the configured id width");
  }
  Graph g;
  labels.resize(num_vertices, 0);
  g.labels_ = std::move(labels);
  g.max_label_ = g.labels_.empty() ? 0 : *std::max_element(g.labels_.begin(), g.labels_.end());
  if (original_ids.empty()) {
    original_ids.resize(num_vertices);
    for (std::size_t v = 0; v < num_vertices; ++v) original_ids[v] = v;
  }
  g.original_ids_ = std::move(original_ids);

  std::vector<std::pair<VertexId, VertexId>> canon;
  canon.reserve(edges.size());
  for (auto [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices) throw Error("edge endpoint out of range");
    if (u == v) continue;
    canon.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(canon.begin(), canon.end());
  canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
  if (canon.size() >= std::numeric_limits<EdgeId>::max()) {
    throw Error("graph has too many edges for the configured id width");
  }

  g.edge_src_.reserve(canon.size());
  g.edge_dst_.reserve(canon.size());
  std::vector<Offset> degree(num_vertices + 1, 0);
  for (auto [u, v] : canon) {
    g.edge_src_.push_back(u);
    g.edge_dst_.push_back(v);
    ++degree[u + 1];
    ++degree[v + 1];
  }
  g.offsets_.assign(num_vertices + 1, 0);
  for (std::size_t v = 0; v < num_vertices; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v + 1];

  g.neighbors_.resize(2 * canon.size());
  g.edge_ids_.resize(2 * canon.size());
  std::vector<Offset> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  // Edges are sorted by (u, v), so filling both directions in edge order keeps
  // each neighbor slice ascending: for a fixed w, smaller neighbors u < w come
  // from edges (u, w) which precede every edge (w, x).
  for (EdgeId e = 0; e < canon.size(); ++e) {
    auto [u, v] = canon[e];
    g.neighbors_[cursor[u]] = v;
    g.edge_ids_[cursor[u]++] = e;
    g.neighbors_[cursor[v]] = u;
    g.edge_ids_[cursor[v]++] = e;
  }
  return g;
}

double Graph::average_degree() const {
  return num_vertices() == 0 ? 0.0 : 2.0 * static_cast<double>(num_edges()) / num_vertices();
}

bool Graph::CheckLink(VertexId u, VertexId v) const {
  if (u == v) return false;
  if (Degree(u) > Degree(v)) std::swap(u, v);
  auto nbrs = Neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::optional<EdgeId> Graph::FindEdge(VertexId u, VertexId v) const {
  if (u == v) return std::nullopt;
  if (Degree(u) > Degree(v)) std::swap(u, v);
  auto nbrs = Neighbors(u);
  auto it = std::lower_bound(nbrs.begin(), nbrs.end(), v);
  if (it == nbrs.end() || *it != v) return std::nullopt;
  return IncidentEdges(u)[it - nbrs.begin()];
}

std::optional<VertexId> Graph::DenseId(std::uint64_t original) const {
  auto it = std::lower_bound(original_ids_.begin(), original_ids_.end(), original);
  if (it == original_ids_.end() || *it != original) return std::nullopt;
  return static_cast<VertexId>(it - original_ids_.begin());
}

namespace {

bool IsSkippable(std::string_view line) {
  auto first = line.find_first_not_of(" \t\r");
  return first == std::string_view::npos || line[first] == '#' || line[first] == '%';
}

// Parses exactly two whitespace-separated integers.
bool ParsePair(std::string_view line, std::int64_t* a, std::int64_t* b) {
  auto skip_ws = [&](std::size_t pos) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) ++pos;
    return pos;
  };
  std::size_t pos = skip_ws(0);
  auto r1 = std::from_chars(line.data() + pos, line.data() + line.size(), *a);
  if (r1.ec != std::errc() || r1.ptr == line.data() + pos) return false;
  pos = static_cast<std::size_t>(r1.ptr - line.data());
  std::size_t next = skip_ws(pos);
  if (next == pos) return false;
  auto r2 = std::from_chars(line.data() + next, line.data() + line.size(), *b);
  if (r2.ec != std::errc() || r2.ptr == line.data() + next) return false;
  pos = skip_ws(static_cast<std::size_t>(r2.ptr - line.data()));
  return pos == line.size();
}

template <typename Fn>
void ForEachRecord(const std::filesystem::path& path, Fn&& fn) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsSkippable(line)) continue;
    std::int64_t a = 0;
    std::int64_t b = 0;
    if (!ParsePair(line, &a, &b)) {
      throw ParseError(path.string(), line_no, "expected two integers, got '" + line + "'");
    }
    fn(line_no, a, b);
  }
}

}  // namespace

Graph LoadGraph(const std::filesystem::path& edge_path,
                const std::optional<std::filesystem::path>& label_path) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> raw_edges;
  std::vector<std::uint64_t> ids;
  ForEachRecord(edge_path, [&](std::size_t line_no, std::int64_t a, std::int64_t b) {
    if (a < 0 || b < 0) throw ParseError(edge_path.string(), line_no, "negative vertex id");
    raw_edges.emplace_back(a, b);
    ids.push_back(static_cast<std::uint64_t>(a));
    ids.push_back(static_cast<std::uint64_t>(b));
  });

  std::vector<std::pair<std::uint64_t, Label>> raw_labels;
  if (label_path) {
    ForEachRecord(*label_path, [&](std::size_t line_no, std::int64_t v, std::int64_t l) {
      if (v < 0) throw ParseError(label_path->string(), line_no, "negative vertex id");
      if (l < 0) throw ParseError(label_path->string(), line_no, "negative label");
      if (l > std::numeric_limits<Label>::max()) {
        throw ParseError(label_path->string(), line_no, "label out of range");
      }
      raw_labels.emplace_back(v, static_cast<Label>(l));
      ids.push_back(static_cast<std::uint64_t>(v));
    });
  }

  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  auto dense = [&](std::uint64_t original) {
    return static_cast<VertexId>(std::lower_bound(ids.begin(), ids.end(), original) - ids.begin());
  };

  std::vector<std::pair<VertexId, VertexId>> edges;
  edges.reserve(raw_edges.size());
  for (auto [a, b] : raw_edges) edges.emplace_back(dense(a), dense(b));
  std::vector<Label> labels(ids.size(), 0);
  for (auto [v, l] : raw_labels) labels[dense(v)] = l;
  const std::size_t n = ids.size();
  return Graph::FromEdges(n, edges, std::move(labels), std::move(ids));
}

void WriteEdgeList(const Graph& g, std::ostream& out) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    auto [u, v] = g.EdgeEndpoints(e);
    out << g.OriginalId(u) << ' ' << g.OriginalId(v) << '\n';
  }
}

void WriteLabels(const Graph& g, std::ostream& out) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    out << g.OriginalId(v) << ' ' << g.label(v) << '\n';
  }
}

}  // namespace kaleido
