#include "pit/overlap_graph.hpp"

#include <algorithm>
#include <string>

namespace pit {

OverlapGraph OverlapGraph::from_edges(std::size_t num_vertices, std::vector<Edge> edges) {
  for (auto& [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices) throw InvalidParams("edge endpoint out of range");
    if (u == v) throw InvalidParams("self loops are not allowed");
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  OverlapGraph graph;
  graph.neighbors_.resize(num_vertices);
  for (auto [u, v] : edges) {
    graph.neighbors_[u].push_back(v);
    graph.neighbors_[v].push_back(u);
  }
  for (auto& list : graph.neighbors_) std::sort(list.begin(), list.end());
  graph.edges_ = std::move(edges);
  return graph;
}

bool OverlapGraph::adjacent(std::size_t u, std::size_t v) const {
  const auto& list = neighbors_.at(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::uint8_t> OverlapGraph::dense_adjacency() const {
  const std::size_t n = num_vertices();
  std::vector<std::uint8_t> dense(n * n, 0);
  for (auto [u, v] : edges_) {
    dense[u * n + v] = 1;
    dense[v * n + u] = 1;
  }
  return dense;
}

OverlapGraph build_overlap_graph(const UtteranceLayout& layout) {
  const std::size_t n = layout.size();
  OverlapGraph graph;
  graph.neighbors_.resize(n);

  // Layout is start-sorted, so the utterances active at start_u are exactly the
  // earlier ones that have not ended yet; together with u they are the
  // concurrency at that instant, and the maximum is attained at some start.
  std::vector<std::size_t> active;
  int max_concurrency = 0;
  for (std::size_t u = 0; u < n; ++u) {
    const std::int64_t start = layout[u].start;
    std::erase_if(active, [&](std::size_t v) { return layout[v].end <= start; });
    for (std::size_t v : active) {
      graph.edges_.emplace_back(v, u);
      graph.neighbors_[v].push_back(u);
      graph.neighbors_[u].push_back(v);
    }
    active.push_back(u);
    max_concurrency = std::max(max_concurrency, static_cast<int>(active.size()));
  }
  std::sort(graph.edges_.begin(), graph.edges_.end());
  for (auto& list : graph.neighbors_) std::sort(list.begin(), list.end());
  graph.max_concurrency_ = max_concurrency;
  return graph;
}

bool is_valid_coloring(const OverlapGraph& graph, const Assignment& assignment) {
  if (assignment.size() != graph.num_vertices()) {
    throw DimensionMismatch("assignment has " + std::to_string(assignment.size()) +
                            " entries for a graph with " + std::to_string(graph.num_vertices()) +
                            " vertices");
  }
  return std::none_of(graph.edges().begin(), graph.edges().end(),
                      [&](const Edge& e) { return assignment[e.first] == assignment[e.second]; });
}

std::vector<std::vector<std::size_t>> connected_components(const OverlapGraph& graph) {
  const std::size_t n = graph.num_vertices();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::size_t>> components;
  std::vector<std::size_t> stack;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::size_t> members;
    seen[root] = true;
    stack.push_back(root);
    while (!stack.empty()) {
      const std::size_t u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (std::size_t v : graph.neighbors(u)) {
        if (!seen[v]) {
          seen[v] = true;
          stack.push_back(v);
        }
      }
    }
    std::sort(members.begin(), members.end());
    components.push_back(std::move(members));
  }
  return components;
}

std::vector<std::size_t> frontier(const OverlapGraph& graph, std::size_t u) {
  const auto& list = graph.neighbors(u);
  return {list.begin(), std::lower_bound(list.begin(), list.end(), u)};
}

std::vector<std::size_t> frontier(const UtteranceLayout& layout, std::size_t u) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < u; ++v) {
    if (intervals_overlap(layout[v], layout[u])) out.push_back(v);
  }
  return out;
}

}  // namespace pit
