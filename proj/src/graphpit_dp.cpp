#include <algorithm>
#include <cassert>
#include <cstdint>
#include <string>
#include <unordered_map>

#include "graphpit_detail.hpp"
#include "pit/graphpit.hpp"

namespace pit::detail {

namespace {

// One retained coloring: its frontier colors (the key) and accumulated score.
struct State {
  std::string key;
  double score;
};

// Back pointer of a state at step u into the states of step u - 1.
struct Back {
  std::uint32_t parent;
  std::uint8_t color;
};

class History {
 public:
  void push(std::vector<Back> step) { steps_.push_back(std::move(step)); }

  // True iff the prefix ending in (parent_a, color_a) at `step` is lexicographically
  // smaller than the one ending in (parent_b, color_b).
  bool prefix_less(std::size_t step, std::uint32_t parent_a, int color_a, std::uint32_t parent_b,
                   int color_b) const {
    int decision = color_a < color_b ? -1 : (color_a > color_b ? 1 : 0);
    for (std::size_t k = step; k-- > 0 && parent_a != parent_b;) {
      const Back& a = steps_[k][parent_a];
      const Back& b = steps_[k][parent_b];
      if (a.color != b.color) decision = a.color < b.color ? -1 : 1;
      parent_a = a.parent;
      parent_b = b.parent;
    }
    return decision < 0;
  }

  std::vector<int> colors(std::uint32_t last) const {
    std::vector<int> out(steps_.size());
    for (std::size_t k = steps_.size(); k-- > 0;) {
      out[k] = steps_[k][last].color;
      last = steps_[k][last].parent;
    }
    return out;
  }

 private:
  std::vector<std::vector<Back>> steps_;
};

}  // namespace

SolveResult solve_dp(const ScoreMatrix& scores, const OverlapGraph& graph, int num_channels) {
  check_problem(scores, graph, num_channels);
  if (num_channels > 255) throw InvalidParams("the DP solver supports at most 255 channels");
  const std::size_t n = graph.num_vertices();
  const auto earlier = earlier_neighbors(graph);

  // Everything that can still constrain later vertices must be in the next
  // frontier; this holds for interval graphs visited in start order.
  for (std::size_t u = 0; u + 1 < n; ++u) {
    for (std::size_t v : earlier[u + 1]) {
      if (v != u && !std::binary_search(earlier[u].begin(), earlier[u].end(), v)) {
        throw InvalidParams("vertex order is not a start-sorted interval order (vertex " +
                            std::to_string(u + 1) + ")");
      }
    }
  }

  SolveResult result;
  History history;
  std::vector<State> states{{std::string(), 0.0}};
  std::vector<State> next_states;
  std::vector<Back> backs;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<int> key_source;
  std::string key;

  for (std::size_t u = 0; u < n; ++u) {
    // key_source[i]: position in the current key of the i-th next-frontier vertex, -1 for u.
    static const std::vector<std::size_t> kEmpty;
    const auto& next_frontier = u + 1 < n ? earlier[u + 1] : kEmpty;
    key_source.clear();
    for (std::size_t w : next_frontier) {
      if (w == u) {
        key_source.push_back(-1);
      } else {
        const auto pos = std::lower_bound(earlier[u].begin(), earlier[u].end(), w) - earlier[u].begin();
        key_source.push_back(static_cast<int>(pos));
      }
    }

    next_states.clear();
    backs.clear();
    index.clear();
    std::size_t extended = 0;
    for (std::uint32_t s = 0; s < states.size(); ++s) {
      const State& state = states[s];
      for (int c = 0; c < num_channels; ++c) {
        const auto color = static_cast<char>(c);
        if (state.key.find(color) != std::string::npos) continue;
        ++extended;
        const double score = state.score + scores(static_cast<std::size_t>(c), u);
        key.clear();
        for (int pos : key_source) key.push_back(pos < 0 ? color : state.key[static_cast<std::size_t>(pos)]);

        auto [it, inserted] = index.try_emplace(key, static_cast<std::uint32_t>(next_states.size()));
        if (inserted) {
          next_states.push_back({key, score});
          backs.push_back({s, static_cast<std::uint8_t>(c)});
          continue;
        }
        State& kept = next_states[it->second];
        Back& kept_back = backs[it->second];
        if (score < kept.score ||
            (score == kept.score &&
             history.prefix_less(u, s, c, kept_back.parent, kept_back.color))) {
          kept.score = score;
          kept_back = {s, static_cast<std::uint8_t>(c)};
        }
      }
    }
    if (next_states.empty()) {
      throw Infeasible("no valid coloring reaches utterance " + std::to_string(u));
    }
    result.nodes += extended;
    result.max_extended_states = std::max(result.max_extended_states, extended);
    result.max_states = std::max(result.max_states, next_states.size());
    history.push(backs);
    std::swap(states, next_states);
  }

  assert(states.size() == 1);
  result.assignment = Assignment(n == 0 ? std::vector<int>{} : history.colors(0), num_channels);
  result.score = trace_score(scores, result.assignment);
  result.max_states = std::max<std::size_t>(result.max_states, 1);
  return result;
}

}  // namespace pit::detail
