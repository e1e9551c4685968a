#pragma once

#include <cstdint>
#include <iterator>
#include <optional>
#include <string_view>
#include <vector>

#include "pit/core.hpp"
#include "pit/losses.hpp"
#include "pit/overlap_graph.hpp"

namespace pit {

// Graph-PIT assignment: color the overlap graph with C channels so that the
// trace Tr(MP) is minimal. Vertices are visited in index order, which is the
// start-time order for graphs built from a canonical layout.
//
// Every solver throws Infeasible when the graph cannot be colored with C
// channels. Exact solvers break score ties toward the lexicographically
// smallest color vector.

enum class Algorithm {
  kUnoptimized,  ///< full sa-SDR for every valid coloring; needs signals
  kBruteForce,
  kDfs,
  kBranchBound,
  kDp,
};

std::string_view to_string(Algorithm algorithm);
/// Accepts the short names used by the CLI: unopt, bf, dfs, bnb, dp (and long forms).
std::optional<Algorithm> parse_algorithm(std::string_view name);

/// Lexicographic enumeration of all valid C-colorings.
class ColoringEnumerator {
 public:
  ColoringEnumerator(const OverlapGraph& graph, int num_channels);

  /// Advances to the next coloring; false once all have been produced.
  bool next();
  const std::vector<int>& colors() const { return colors_; }
  Assignment assignment() const { return Assignment(colors_, num_channels_); }
  /// Successful color placements so far (search-tree nodes).
  std::uint64_t nodes() const { return nodes_; }

 private:
  std::vector<std::vector<std::size_t>> earlier_;
  std::vector<int> colors_;
  int num_channels_;
  bool started_ = false;
  bool done_ = false;
  std::uint64_t nodes_ = 0;
};

/// Input range over all valid colorings, for range-for loops.
class ColoringRange {
 public:
  class iterator {
   public:
    using iterator_category = std::input_iterator_tag;
    using value_type = Assignment;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    explicit iterator(ColoringEnumerator* source) : source_(source) { advance(); }

    Assignment operator*() const { return source_->assignment(); }
    iterator& operator++() {
      advance();
      return *this;
    }
    bool operator==(const iterator& other) const { return source_ == other.source_; }

   private:
    void advance() {
      if (source_ && !source_->next()) source_ = nullptr;
    }
    ColoringEnumerator* source_ = nullptr;
  };

  ColoringRange(const OverlapGraph& graph, int num_channels) : enumerator_(graph, num_channels) {}
  iterator begin() { return iterator(&enumerator_); }
  iterator end() { return {}; }

 private:
  ColoringEnumerator enumerator_;
};

ColoringRange enumerate_colorings(const OverlapGraph& graph, int num_channels);

/// Number of valid colorings (by enumeration).
std::uint64_t count_colorings(const OverlapGraph& graph, int num_channels);

/// Evaluates sa_sdr_loss(estimates, targets * P) for every valid coloring P and keeps the
/// smallest. Targets must be zero outside their intervals. Fills `loss`; `score` is
/// Tr(MP) with the dot-product score matrix.
SolveResult solve_graphpit_unoptimized(const SignalMatrix& estimates, const SignalMatrix& targets,
                                       const UtteranceLayout& layout, int num_channels);

SolveResult solve_graphpit_brute_force(const ScoreMatrix& scores, const OverlapGraph& graph,
                                       int num_channels);

/// Greedy backtracking: colors in ascending added score, first complete coloring wins.
/// optimal is false on the result.
SolveResult solve_graphpit_dfs(const ScoreMatrix& scores, const OverlapGraph& graph,
                               int num_channels);

SolveResult solve_graphpit_branch_bound(const ScoreMatrix& scores, const OverlapGraph& graph,
                                        int num_channels);

/// Dynamic programming over frontier colorings. Requires the interval-graph
/// structure of a start-sorted layout; throws InvalidParams otherwise.
SolveResult solve_graphpit_dp(const ScoreMatrix& scores, const UtteranceLayout& layout,
                              const OverlapGraph& graph, int num_channels);

/// Dispatches to one of the score-matrix solvers (not kUnoptimized).
SolveResult solve_graphpit(Algorithm algorithm, const ScoreMatrix& scores,
                           const OverlapGraph& graph, int num_channels);

/// Solves every connected component independently and concatenates the colorings.
/// With `parallel`, components are distributed over OpenMP threads.
SolveResult solve_per_component(Algorithm algorithm, const ScoreMatrix& scores,
                                const OverlapGraph& graph, int num_channels,
                                bool parallel = false);

/// Graph-PIT sa-SDR loss via the dot-product decomposition (or direct enumeration for
/// kUnoptimized). Result holds the assignment, Tr(MP) and the loss.
SolveResult graphpit_loss(const SignalMatrix& estimates, const SignalMatrix& targets,
                          const UtteranceLayout& layout, int num_channels, Algorithm algorithm,
                          bool per_component = false);

/// Subgraph induced by ascending `members`, relabeled 0..k-1.
OverlapGraph induced_subgraph(const OverlapGraph& graph, const std::vector<std::size_t>& members);

}  // namespace pit
