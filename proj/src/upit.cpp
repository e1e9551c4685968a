#include "pit/upit.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <string>

namespace pit {

namespace {

void require_square(const ScoreMatrix& scores) {
  if (!scores.square()) {
    throw DimensionMismatch("uPIT needs a square score matrix, got " +
                            std::to_string(scores.rows()) + "x" + std::to_string(scores.cols()));
  }
  if (scores.rows() == 0) throw DimensionMismatch("empty score matrix");
}

}  // namespace

SolveResult solve_upit_brute_force(const ScoreMatrix& scores) {
  require_square(scores);
  const std::size_t n = scores.rows();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::vector<int> best = perm;
  double best_score = std::numeric_limits<double>::infinity();
  std::uint64_t evaluated = 0;
  do {
    double score = 0.0;
    for (std::size_t u = 0; u < n; ++u) score += scores(static_cast<std::size_t>(perm[u]), u);
    ++evaluated;
    if (score < best_score) {
      best_score = score;
      best = perm;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  SolveResult result;
  result.assignment = Assignment(std::move(best), static_cast<int>(n));
  result.score = trace_score(scores, result.assignment);
  result.nodes = evaluated;
  return result;
}

SolveResult solve_upit_hungarian(const ScoreMatrix& scores) {
  require_square(scores);
  const std::size_t n = scores.rows();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  // Rows are utterances, columns are channels; index 0 is a virtual column.
  // The transposed copy keeps the inner loop over channels contiguous.
  std::vector<double> cost(n * n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t u = 0; u < n; ++u) cost[u * n + c] = scores(c, u);
  }
  std::vector<double> row_potential(n + 1, 0.0), col_potential(n + 1, 0.0);
  std::vector<std::size_t> matched_row(n + 1, 0), way(n + 1, 0);
  std::vector<double> min_slack(n + 1);
  std::vector<char> used(n + 1);
  std::uint64_t steps = 0;

  // Column then row reduction: feasible potentials, and every edge that becomes
  // tight to a free column and a free row is matched right away.
  std::vector<char> row_matched(n + 1, 0);
  for (std::size_t col = 1; col <= n; ++col) {
    std::size_t best_row = 1;
    for (std::size_t row = 2; row <= n; ++row) {
      if (cost[(row - 1) * n + col - 1] < cost[(best_row - 1) * n + col - 1]) best_row = row;
    }
    col_potential[col] = cost[(best_row - 1) * n + col - 1];
    if (!row_matched[best_row]) {
      matched_row[col] = best_row;
      row_matched[best_row] = 1;
    }
  }
  for (std::size_t row = 1; row <= n; ++row) {
    if (row_matched[row]) continue;
    const double* row_cost = cost.data() + (row - 1) * n - 1;
    std::size_t best_col = 1;
    for (std::size_t col = 2; col <= n; ++col) {
      if (row_cost[col] - col_potential[col] < row_cost[best_col] - col_potential[best_col]) best_col = col;
    }
    row_potential[row] = row_cost[best_col] - col_potential[best_col];
    if (matched_row[best_col] == 0) {
      matched_row[best_col] = row;
      row_matched[row] = 1;
    }
  }

  for (std::size_t row = 1; row <= n; ++row) {
    if (row_matched[row]) continue;
    matched_row[0] = row;
    std::size_t col0 = 0;
    std::fill(min_slack.begin(), min_slack.end(), kInf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const std::size_t row0 = matched_row[col0];
      const double* row_cost = cost.data() + (row0 - 1) * n - 1;
      const double base = row_potential[row0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= n; ++col) {
        if (used[col]) continue;
        const double slack = row_cost[col] - base - col_potential[col];
        if (slack < min_slack[col]) {
          min_slack[col] = slack;
          way[col] = col0;
        }
        if (min_slack[col] < delta) {
          delta = min_slack[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= n; ++col) {
        if (used[col]) {
          row_potential[matched_row[col]] += delta;
          col_potential[col] -= delta;
        } else {
          min_slack[col] -= delta;
        }
      }
      col0 = col1;
      ++steps;
    } while (matched_row[col0] != 0);
    // Flip the augmenting path.
    do {
      const std::size_t col1 = way[col0];
      matched_row[col0] = matched_row[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  std::vector<int> colors(n, 0);
  for (std::size_t col = 1; col <= n; ++col) colors[matched_row[col] - 1] = static_cast<int>(col - 1);

  SolveResult result;
  result.assignment = Assignment(std::move(colors), static_cast<int>(n));
  result.score = trace_score(scores, result.assignment);
  result.nodes = steps;
  return result;
}

SolveResult solve_upit(const SignalMatrix& estimates, const SignalMatrix& targets,
                       DecompositionKind kind) {
  if (estimates.num_columns() != targets.num_columns()) {
    throw DimensionMismatch("uPIT needs as many targets as output channels");
  }
  const Decomposition decomposition = build_decomposition(kind, estimates, targets);
  SolveResult result = solve_upit_hungarian(decomposition.scores);
  result.loss = decomposition.f(result.score);
  return result;
}

}  // namespace pit
