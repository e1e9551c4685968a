#pragma once

#include <vector>

#include "pit/core.hpp"
#include "pit/overlap_graph.hpp"

namespace pit::detail {

/// Throws unless M is C x U for the graph, C >= 1, and the graph's concurrency fits C.
void check_problem(const ScoreMatrix& scores, const OverlapGraph& graph, int num_channels);

/// Earlier-indexed neighbor list of every vertex.
std::vector<std::vector<std::size_t>> earlier_neighbors(const OverlapGraph& graph);

SolveResult solve_dp(const ScoreMatrix& scores, const OverlapGraph& graph, int num_channels);

}  // namespace pit::detail
