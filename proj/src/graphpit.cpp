#include "pit/graphpit.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <string>

#include "graphpit_detail.hpp"

namespace pit {

namespace detail {

void check_problem(const ScoreMatrix& scores, const OverlapGraph& graph, int num_channels) {
  if (num_channels < 1) throw InvalidParams("at least one output channel is required");
  if (scores.rows() != static_cast<std::size_t>(num_channels) ||
      scores.cols() != graph.num_vertices()) {
    throw DimensionMismatch("score matrix is " + std::to_string(scores.rows()) + "x" +
                            std::to_string(scores.cols()) + ", expected " +
                            std::to_string(num_channels) + "x" +
                            std::to_string(graph.num_vertices()));
  }
  if (graph.max_concurrency() > num_channels) {
    throw Infeasible(std::to_string(graph.max_concurrency()) +
                     " utterances overlap but only " + std::to_string(num_channels) +
                     " channels are available");
  }
}

std::vector<std::vector<std::size_t>> earlier_neighbors(const OverlapGraph& graph) {
  std::vector<std::vector<std::size_t>> out(graph.num_vertices());
  for (std::size_t u = 0; u < out.size(); ++u) out[u] = frontier(graph, u);
  return out;
}

}  // namespace detail

namespace {

// Candidate colors of every vertex sorted by (added score, color).
std::vector<std::vector<int>> greedy_orders(const ScoreMatrix& scores, int num_channels) {
  std::vector<std::vector<int>> orders(scores.cols());
  for (std::size_t u = 0; u < scores.cols(); ++u) {
    auto& order = orders[u];
    order.resize(static_cast<std::size_t>(num_channels));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return scores(static_cast<std::size_t>(a), u) < scores(static_cast<std::size_t>(b), u);
    });
  }
  return orders;
}

bool color_allowed(const std::vector<int>& colors, const std::vector<std::size_t>& earlier, int c) {
  return std::none_of(earlier.begin(), earlier.end(), [&](std::size_t v) { return colors[v] == c; });
}

Infeasible no_coloring(int num_channels) {
  return Infeasible("the overlap graph has no valid coloring with " + std::to_string(num_channels) +
                    " channels");
}

class GreedySearch {
 public:
  GreedySearch(const ScoreMatrix& scores, const OverlapGraph& graph, int num_channels)
      : scores_(scores),
        earlier_(detail::earlier_neighbors(graph)),
        orders_(greedy_orders(scores, num_channels)),
        colors_(graph.num_vertices(), -1) {}

  bool run(std::size_t u) {
    if (u == colors_.size()) return true;
    for (int c : orders_[u]) {
      if (!color_allowed(colors_, earlier_[u], c)) continue;
      ++nodes_;
      colors_[u] = c;
      if (run(u + 1)) return true;
    }
    colors_[u] = -1;
    return false;
  }

  const ScoreMatrix& scores_;
  std::vector<std::vector<std::size_t>> earlier_;
  std::vector<std::vector<int>> orders_;
  std::vector<int> colors_;
  std::uint64_t nodes_ = 0;
};

class BranchAndBound {
 public:
  BranchAndBound(const ScoreMatrix& scores, const OverlapGraph& graph, int num_channels)
      : scores_(scores),
        earlier_(detail::earlier_neighbors(graph)),
        orders_(greedy_orders(scores, num_channels)),
        colors_(graph.num_vertices(), -1),
        suffix_bound_(graph.num_vertices() + 1, 0.0) {
    // Lower bound on the completion cost: every remaining vertex adds at least
    // its column minimum.
    const std::size_t n = graph.num_vertices();
    double magnitude = 0.0;
    for (std::size_t u = n; u-- > 0;) {
      double column_min = std::numeric_limits<double>::infinity();
      double column_abs = 0.0;
      for (std::size_t c = 0; c < scores.rows(); ++c) {
        column_min = std::min(column_min, scores(c, u));
        column_abs = std::max(column_abs, std::abs(scores(c, u)));
      }
      suffix_bound_[u] = suffix_bound_[u + 1] + column_min;
      magnitude += column_abs;
    }
    // Slack for rounding differences between the bound and a completed sum.
    tolerance_ = 8.0 * static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon() *
                 magnitude;
  }

  void run(std::size_t u, double partial) {
    if (u == colors_.size()) {
      if (!have_best_ || partial < best_score_ || (partial == best_score_ && colors_ < best_)) {
        have_best_ = true;
        best_score_ = partial;
        best_ = colors_;
      }
      return;
    }
    for (int c : orders_[u]) {
      if (!color_allowed(colors_, earlier_[u], c)) continue;
      ++nodes_;
      colors_[u] = c;
      const double next = partial + scores_(static_cast<std::size_t>(c), u);
      if (pruned(next + suffix_bound_[u + 1], u + 1)) continue;
      run(u + 1, next);
    }
    colors_[u] = -1;
  }

  bool have_best_ = false;
  double best_score_ = 0.0;
  std::vector<int> best_;
  std::uint64_t nodes_ = 0;

 private:
  bool pruned(double bound, std::size_t depth) const {
    if (!have_best_) return false;
    if (bound > best_score_ + tolerance_) return true;
    // Can at most tie the incumbent: only a lexicographically smaller prefix may win.
    if (bound >= best_score_ - tolerance_) {
      for (std::size_t v = 0; v < depth; ++v) {
        if (colors_[v] != best_[v]) return colors_[v] > best_[v];
      }
    }
    return false;
  }

  const ScoreMatrix& scores_;
  std::vector<std::vector<std::size_t>> earlier_;
  std::vector<std::vector<int>> orders_;
  std::vector<int> colors_;
  std::vector<double> suffix_bound_;
  double tolerance_ = 0.0;
};

}  // namespace

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::kUnoptimized: return "unopt";
    case Algorithm::kBruteForce: return "bf";
    case Algorithm::kDfs: return "dfs";
    case Algorithm::kBranchBound: return "bnb";
    case Algorithm::kDp: return "dp";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) {
  if (name == "unopt" || name == "unoptimized") return Algorithm::kUnoptimized;
  if (name == "bf" || name == "brute-force") return Algorithm::kBruteForce;
  if (name == "dfs") return Algorithm::kDfs;
  if (name == "bnb" || name == "branch-and-bound") return Algorithm::kBranchBound;
  if (name == "dp" || name == "dynamic-programming") return Algorithm::kDp;
  return std::nullopt;
}

ColoringEnumerator::ColoringEnumerator(const OverlapGraph& graph, int num_channels)
    : earlier_(detail::earlier_neighbors(graph)),
      colors_(graph.num_vertices(), -1),
      num_channels_(num_channels) {
  if (num_channels < 1) throw InvalidParams("at least one output channel is required");
}

bool ColoringEnumerator::next() {
  if (done_) return false;
  const auto n = static_cast<std::ptrdiff_t>(colors_.size());
  std::ptrdiff_t depth;
  if (!started_) {
    started_ = true;
    if (n == 0) return true;  // the empty coloring
    depth = 0;
  } else {
    depth = n - 1;
  }
  while (depth >= 0) {
    const auto u = static_cast<std::size_t>(depth);
    int c = colors_[u] + 1;
    while (c < num_channels_ && !color_allowed(colors_, earlier_[u], c)) ++c;
    if (c < num_channels_) {
      colors_[u] = c;
      ++nodes_;
      if (depth == n - 1) return true;
      ++depth;
    } else {
      colors_[u] = -1;
      --depth;
    }
  }
  done_ = true;
  return false;
}

ColoringRange enumerate_colorings(const OverlapGraph& graph, int num_channels) {
  return ColoringRange(graph, num_channels);
}

std::uint64_t count_colorings(const OverlapGraph& graph, int num_channels) {
  ColoringEnumerator enumerator(graph, num_channels);
  std::uint64_t count = 0;
  while (enumerator.next()) ++count;
  return count;
}

SolveResult solve_graphpit_unoptimized(const SignalMatrix& estimates, const SignalMatrix& targets,
                                       const UtteranceLayout& layout, int num_channels) {
  if (estimates.num_columns() != static_cast<std::size_t>(num_channels)) {
    throw DimensionMismatch("number of estimates does not match the channel count");
  }
  if (estimates.num_samples() != targets.num_samples()) {
    throw DimensionMismatch("estimates and targets differ in length");
  }
  targets.check_supports(layout);
  const OverlapGraph graph = build_overlap_graph(layout);
  const Decomposition decomposition = score_matrix_sa_sdr_dot(estimates, targets);
  detail::check_problem(decomposition.scores, graph, num_channels);

  const double target_energy = decomposition.f.target_energy;
  const std::size_t num_samples = targets.num_samples();
  SignalMatrix assigned(num_samples, static_cast<std::size_t>(num_channels));

  ColoringEnumerator enumerator(graph, num_channels);
  std::optional<std::vector<int>> best;
  double best_loss = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;
  while (enumerator.next()) {
    const auto& colors = enumerator.colors();
    // Materialize S P for this coloring and evaluate the loss from scratch.
    for (std::size_t c = 0; c < assigned.num_columns(); ++c) {
      auto col = assigned.column(c);
      std::fill(col.begin(), col.end(), 0.0);
    }
    for (std::size_t u = 0; u < colors.size(); ++u) {
      auto src = targets.column(u);
      auto dst = assigned.column(static_cast<std::size_t>(colors[u]));
      for (auto t = layout[u].start; t < layout[u].end; ++t) {
        dst[static_cast<std::size_t>(t)] += src[static_cast<std::size_t>(t)];
      }
    }
    double error = 0.0;
    for (std::size_t c = 0; c < assigned.num_columns(); ++c) {
      auto s = assigned.column(c);
      auto e = estimates.column(c);
      for (std::size_t t = 0; t < num_samples; ++t) {
        const double d = s[t] - e[t];
        error += d * d;
      }
    }
    ++evaluated;
    const double loss = clamped_sdr_db(target_energy, error);
    if (loss < best_loss) {
      best_loss = loss;
      best = colors;
    }
  }
  if (!best) throw no_coloring(num_channels);

  SolveResult result;
  result.assignment = Assignment(std::move(*best), num_channels);
  result.score = trace_score(decomposition.scores, result.assignment);
  result.loss = best_loss;
  result.nodes = evaluated;
  return result;
}

SolveResult solve_graphpit_brute_force(const ScoreMatrix& scores, const OverlapGraph& graph,
                                       int num_channels) {
  detail::check_problem(scores, graph, num_channels);
  ColoringEnumerator enumerator(graph, num_channels);
  std::optional<std::vector<int>> best;
  double best_score = std::numeric_limits<double>::infinity();
  while (enumerator.next()) {
    const auto& colors = enumerator.colors();
    double score = 0.0;
    for (std::size_t u = 0; u < colors.size(); ++u) {
      score += scores(static_cast<std::size_t>(colors[u]), u);
    }
    if (!best || score < best_score) {
      best_score = score;
      best = colors;
    }
  }
  if (!best) throw no_coloring(num_channels);

  SolveResult result;
  result.assignment = Assignment(std::move(*best), num_channels);
  result.score = trace_score(scores, result.assignment);
  result.nodes = enumerator.nodes();
  return result;
}

SolveResult solve_graphpit_dfs(const ScoreMatrix& scores, const OverlapGraph& graph,
                               int num_channels) {
  detail::check_problem(scores, graph, num_channels);
  GreedySearch search(scores, graph, num_channels);
  if (!search.run(0)) throw no_coloring(num_channels);

  SolveResult result;
  result.assignment = Assignment(std::move(search.colors_), num_channels);
  result.score = trace_score(scores, result.assignment);
  result.optimal = false;
  result.nodes = search.nodes_;
  return result;
}

SolveResult solve_graphpit_branch_bound(const ScoreMatrix& scores, const OverlapGraph& graph,
                                        int num_channels) {
  detail::check_problem(scores, graph, num_channels);
  BranchAndBound search(scores, graph, num_channels);
  search.run(0, 0.0);
  if (!search.have_best_) throw no_coloring(num_channels);

  SolveResult result;
  result.assignment = Assignment(std::move(search.best_), num_channels);
  result.score = trace_score(scores, result.assignment);
  result.nodes = search.nodes_;
  return result;
}

SolveResult solve_graphpit_dp(const ScoreMatrix& scores, const UtteranceLayout& layout,
                              const OverlapGraph& graph, int num_channels) {
  if (layout.size() != graph.num_vertices()) {
    throw DimensionMismatch("layout and graph differ in the number of utterances");
  }
  return detail::solve_dp(scores, graph, num_channels);
}

SolveResult solve_graphpit(Algorithm algorithm, const ScoreMatrix& scores,
                           const OverlapGraph& graph, int num_channels) {
  switch (algorithm) {
    case Algorithm::kBruteForce: return solve_graphpit_brute_force(scores, graph, num_channels);
    case Algorithm::kDfs: return solve_graphpit_dfs(scores, graph, num_channels);
    case Algorithm::kBranchBound: return solve_graphpit_branch_bound(scores, graph, num_channels);
    case Algorithm::kDp: return detail::solve_dp(scores, graph, num_channels);
    case Algorithm::kUnoptimized: break;
  }
  throw InvalidParams("the unoptimized search needs signals, not a score matrix");
}

OverlapGraph induced_subgraph(const OverlapGraph& graph, const std::vector<std::size_t>& members) {
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t v : graph.neighbors(members[i])) {
      auto it = std::lower_bound(members.begin(), members.end(), v);
      if (it != members.end() && *it == v) {
        const auto j = static_cast<std::size_t>(it - members.begin());
        if (i < j) edges.emplace_back(i, j);
      }
    }
  }
  return OverlapGraph::from_edges(members.size(), std::move(edges));
}

SolveResult solve_per_component(Algorithm algorithm, const ScoreMatrix& scores,
                                const OverlapGraph& graph, int num_channels, bool parallel) {
  detail::check_problem(scores, graph, num_channels);
  const auto components = connected_components(graph);
  if (components.size() <= 1) return solve_graphpit(algorithm, scores, graph, num_channels);

  const auto count = static_cast<std::ptrdiff_t>(components.size());
  std::vector<SolveResult> partial(components.size());
  std::vector<std::exception_ptr> errors(components.size());

#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const auto& members = components[static_cast<std::size_t>(i)];
    try {
      partial[static_cast<std::size_t>(i)] =
          solve_graphpit(algorithm, scores.select_columns(members),
                         induced_subgraph(graph, members), num_channels);
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }

  for (std::size_t i = 0; i < errors.size(); ++i) {
    if (!errors[i]) continue;
    try {
      std::rethrow_exception(errors[i]);
    } catch (const Infeasible& e) {
      throw Infeasible("component " + std::to_string(i) + ": " + e.what(), i);
    }
  }

  std::vector<int> colors(graph.num_vertices(), 0);
  SolveResult result;
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& members = components[i];
    for (std::size_t k = 0; k < members.size(); ++k) colors[members[k]] = partial[i].assignment[k];
    result.optimal = result.optimal && partial[i].optimal;
    result.nodes += partial[i].nodes;
    result.max_states = std::max(result.max_states, partial[i].max_states);
    result.max_extended_states =
        std::max(result.max_extended_states, partial[i].max_extended_states);
  }
  result.assignment = Assignment(std::move(colors), num_channels);
  result.score = trace_score(scores, result.assignment);
  return result;
}

SolveResult graphpit_loss(const SignalMatrix& estimates, const SignalMatrix& targets,
                          const UtteranceLayout& layout, int num_channels, Algorithm algorithm,
                          bool per_component) {
  if (algorithm == Algorithm::kUnoptimized) {
    if (per_component) throw InvalidParams("the unoptimized search does not split by component");
    return solve_graphpit_unoptimized(estimates, targets, layout, num_channels);
  }
  if (estimates.num_columns() != static_cast<std::size_t>(num_channels)) {
    throw DimensionMismatch("number of estimates does not match the channel count");
  }
  targets.check_supports(layout);
  const OverlapGraph graph = build_overlap_graph(layout);
  const Decomposition decomposition = score_matrix_sa_sdr_dot(estimates, targets);
  SolveResult result =
      per_component ? solve_per_component(algorithm, decomposition.scores, graph, num_channels)
                    : solve_graphpit(algorithm, decomposition.scores, graph, num_channels);
  result.loss = decomposition.f(result.score);
  return result;
}

}  // namespace pit
