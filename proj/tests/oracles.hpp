#pragma once

// Independent reference implementations used only by the tests. Each one takes
// the slow, obvious route so it shares no code path with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "pit/core.hpp"
#include "pit/overlap_graph.hpp"

namespace oracle {

/// Every vector in [0, C)^U (odometer order) that colors no edge monochromatic.
inline std::vector<std::vector<int>> all_valid_colorings(const pit::OverlapGraph& graph,
                                                         int channels) {
  const std::size_t n = graph.num_vertices();
  std::vector<std::vector<int>> out;
  std::vector<int> colors(n, 0);
  while (true) {
    bool valid = true;
    for (auto [u, v] : graph.edges()) valid = valid && colors[u] != colors[v];
    if (valid) out.push_back(colors);
    std::size_t k = n;
    while (k > 0) {
      --k;
      if (++colors[k] < channels) break;
      colors[k] = 0;
      if (k == 0) return out;
    }
    if (n == 0) return out;
  }
}

/// Recursive backtracking count of valid colorings.
inline std::uint64_t count_by_backtracking(const pit::OverlapGraph& graph, int channels) {
  std::vector<int> colors(graph.num_vertices(), -1);
  std::function<std::uint64_t(std::size_t)> rec = [&](std::size_t u) -> std::uint64_t {
    if (u == colors.size()) return 1;
    std::uint64_t total = 0;
    for (int c = 0; c < channels; ++c) {
      bool ok = true;
      for (std::size_t v : graph.neighbors(u)) ok = ok && colors[v] != c;
      if (!ok) continue;
      colors[u] = c;
      total += rec(u + 1);
      colors[u] = -1;
    }
    return total;
  };
  return rec(0);
}

/// Minimum of Tr(MP) over all permutations, by recursion over utterances.
inline double best_permutation_score(const pit::ScoreMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<bool> used(n, false);
  std::function<double(std::size_t)> rec = [&](std::size_t u) -> double {
    if (u == n) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c]) continue;
      used[c] = true;
      best = std::min(best, m(c, u) + rec(u + 1));
      used[c] = false;
    }
    return best;
  };
  return rec(0);
}

/// Minimum of Tr(MP) over permutations by DP over the set of used channels (n <= 20).
inline double best_permutation_score_dp(const pit::ScoreMatrix& m) {
  const std::size_t n = m.rows();
  std::vector<double> best(std::size_t{1} << n, std::numeric_limits<double>::infinity());
  best[0] = 0.0;
  for (std::size_t used = 0; used < best.size(); ++used) {
    const auto u = static_cast<std::size_t>(__builtin_popcountll(used));
    if (u == n) continue;
    for (std::size_t c = 0; c < n; ++c) {
      if (used >> c & 1u) continue;
      auto& next = best[used | (std::size_t{1} << c)];
      next = std::min(next, best[used] + m(c, u));
    }
  }
  return best.back();
}

/// Minimum of Tr(MP) over explicit valid colorings, summed in utterance order.
inline double best_coloring_score(const pit::ScoreMatrix& m, const pit::OverlapGraph& graph,
                                  int channels) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& colors : all_valid_colorings(graph, channels)) {
    double s = 0.0;
    for (std::size_t u = 0; u < colors.size(); ++u) s += m(static_cast<std::size_t>(colors[u]), u);
    best = std::min(best, s);
  }
  return best;
}

/// Dense S P via the explicit U x C assignment matrix.
inline pit::SignalMatrix matmul_assignment(const pit::SignalMatrix& s,
                                           const std::vector<std::uint8_t>& dense, int channels) {
  const auto c_count = static_cast<std::size_t>(channels);
  pit::SignalMatrix out(s.num_samples(), c_count);
  for (std::size_t t = 0; t < s.num_samples(); ++t) {
    for (std::size_t c = 0; c < c_count; ++c) {
      double acc = 0.0;
      for (std::size_t u = 0; u < s.num_columns(); ++u) acc += s(t, u) * dense[u * c_count + c];
      out(t, c) = acc;
    }
  }
  return out;
}

/// Tr(P^T A P) with dense matrices.
inline long trace_pt_a_p(const std::vector<std::uint8_t>& adjacency,
                         const std::vector<std::uint8_t>& dense, std::size_t n, int channels) {
  const auto c_count = static_cast<std::size_t>(channels);
  long trace = 0;
  for (std::size_t c = 0; c < c_count; ++c) {
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t v = 0; v < n; ++v) {
        trace += dense[u * c_count + c] * adjacency[u * n + v] * dense[v * c_count + c];
      }
    }
  }
  return trace;
}

/// Union-find connected components, grouped by smallest member.
inline std::vector<std::vector<std::size_t>> union_find_components(std::size_t n,
                                                                   const std::vector<pit::Edge>& edges) {
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (auto [u, v] : edges) {
    const auto a = find(u), b = find(v);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<std::size_t>> groups(n);
  for (std::size_t v = 0; v < n; ++v) groups[find(v)].push_back(v);
  std::vector<std::vector<std::size_t>> out;
  for (auto& g : groups) {
    if (!g.empty()) out.push_back(std::move(g));
  }
  return out;
}

/// SDR loss straight from its definition, same clamp, one sample at a time.
inline double sdr(const std::vector<double>& estimate, const std::vector<double>& target) {
  double energy = 0.0, error = 0.0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    energy += target[t] * target[t];
    error += (target[t] - estimate[t]) * (target[t] - estimate[t]);
  }
  return -10.0 * std::log10(energy / std::max(error, 1e-10 * energy));
}

inline std::vector<double> column(const pit::SignalMatrix& s, std::size_t n) {
  auto col = s.column(n);
  return {col.begin(), col.end()};
}

}  // namespace oracle
