#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pit/core.hpp"

namespace pit {

using Edge = std::pair<std::size_t, std::size_t>;

/// Undirected graph with one vertex per utterance and an edge per temporal overlap.
class OverlapGraph {
 public:
  OverlapGraph() = default;

  /// Arbitrary graph, e.g. for solver tests. Edges are normalized to (min, max) and
  /// deduplicated. max_concurrency() is 0 (unknown) for such graphs.
  static OverlapGraph from_edges(std::size_t num_vertices, std::vector<Edge> edges);

  std::size_t num_vertices() const { return neighbors_.size(); }
  /// Sorted list of (u, v) with u < v.
  const std::vector<Edge>& edges() const { return edges_; }
  /// Sorted neighbor list of u.
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return neighbors_[u]; }
  bool adjacent(std::size_t u, std::size_t v) const;

  /// Largest number of simultaneously active utterances; 0 if the graph was not built
  /// from a layout.
  int max_concurrency() const { return max_concurrency_; }

  /// Dense row-major U x U adjacency matrix A_G.
  std::vector<std::uint8_t> dense_adjacency() const;

 private:
  friend OverlapGraph build_overlap_graph(const UtteranceLayout& layout);

  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<Edge> edges_;
  int max_concurrency_ = 0;
};

OverlapGraph build_overlap_graph(const UtteranceLayout& layout);

/// True iff no edge joins two vertices of the same color.
bool is_valid_coloring(const OverlapGraph& graph, const Assignment& assignment);

/// Vertex sets of the connected components, each ascending, ordered by smallest member.
std::vector<std::vector<std::size_t>> connected_components(const OverlapGraph& graph);

/// Earlier-indexed neighbors of u, ascending.
std::vector<std::size_t> frontier(const OverlapGraph& graph, std::size_t u);

/// Earlier-indexed utterances overlapping u, found by scanning the layout.
std::vector<std::size_t> frontier(const UtteranceLayout& layout, std::size_t u);

}  // namespace pit
