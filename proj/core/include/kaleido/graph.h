//
// Kaleido - Copyright 2026 The Kaleido Authors.
// SPDX-License-Identifier: Apache-2.0
//

#ifndef KALEIDO_GRAPH_H_
#define KALEIDO_GRAPH_H_

#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "kaleido/common.h"

namespace kaleido {

// Immutable undirected vertex-labeled graph in compressed sparse column form.
//
// Vertex ids are dense (0..n-1). Input ids are densified in ascending order so
// that the relative order of the original ids is preserved; OriginalId() maps
// back. Every undirected edge also carries an id: edges are numbered by
// ascending (min endpoint, max endpoint), which is the total order used by
// edge-induced exploration.
class Graph {
 public:
  Graph() = default;

  // Builds a graph over dense ids 0..num_vertices-1. Self-loops and duplicate
  // edges (in either orientation) are dropped. Missing labels default to 0.
  static Graph FromEdges(std::size_t num_vertices,
                         std::span<const std::pair<VertexId, VertexId>> edges,
                         std::vector<Label> labels = {},
                         std::vector<std::uint64_t> original_ids = {});

  std::size_t num_vertices() const { return labels_.size(); }
  std::size_t num_edges() const { return edge_src_.size(); }
  Label max_label() const { return max_label_; }
  double average_degree() const;

  std::span<const Offset> offsets() const { return offsets_; }

  std::span<const VertexId> Neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  // Edge ids parallel to Neighbors(v).
  std::span<const EdgeId> IncidentEdges(VertexId v) const {
    return {edge_ids_.data() + offsets_[v], edge_ids_.data() + offsets_[v + 1]};
  }
  std::size_t Degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Binary search in the shorter neighbor slice.
  bool CheckLink(VertexId u, VertexId v) const;
  // Id of edge {u,v}, if present.
  std::optional<EdgeId> FindEdge(VertexId u, VertexId v) const;

  Label label(VertexId v) const { return labels_[v]; }
  std::span<const Label> labels() const { return labels_; }

  // Endpoints of an edge, smaller id first.
  std::pair<VertexId, VertexId> EdgeEndpoints(EdgeId e) const {
    return {edge_src_[e], edge_dst_[e]};
  }

  std::uint64_t OriginalId(VertexId v) const { return original_ids_[v]; }
  std::optional<VertexId> DenseId(std::uint64_t original) const;

  bool operator==(const Graph& other) const = default;

 private:
  std::vector<Offset> offsets_{0};
  std::vector<VertexId> neighbors_;
  std::vector<EdgeId> edge_ids_;
  std::vector<VertexId> edge_src_;
  std::vector<VertexId> edge_dst_;
  std::vector<Label> labels_;
  std::vector<std::uint64_t> original_ids_;
  Label max_label_ = 0;
};

// Reads an edge list ("u v" per line, '#' and '%' comments) and an optional
// label file ("vertex label" per line). Vertices that appear only in the
// label file become isolated vertices.
Graph LoadGraph(const std::filesystem::path& edge_path,
                const std::optional<std::filesystem::path>& label_path = std::nullopt);

// Writes the edge list with original ids, one "u v" line per edge in edge-id
// order. LoadGraph of the output reproduces the graph when every vertex has at
// least one edge.
void WriteEdgeList(const Graph& g, std::ostream& out);
void WriteLabels(const Graph& g, std::ostream& out);

}  // namespace kaleido

#endif  // KALEIDO_GRAPH_H_
