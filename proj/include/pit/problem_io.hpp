#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pit/core.hpp"
#include "pit/overlap_graph.hpp"

namespace pit {

// Problem file (JSON):
//   {"total_length": T, "intervals": [[start, end], ...], "num_channels": C,
//    "score_matrix": [[...], ...]}                      C rows of U scores, or
//    "targets": "<base64>", "estimates": "<base64>"     little-endian float32,
//                                                       one block of T values per column
// Optional "edges": [[u, v], ...] is written for debugging and ignored on input.
// Intervals may be in any order; they are canonicalized on load.

struct Problem {
  UtteranceLayout layout;
  /// order[k]: position in the file of canonical utterance k.
  std::vector<std::size_t> order;
  int num_channels = 0;
  std::optional<ScoreMatrix> scores;     // columns in canonical order
  std::optional<SignalMatrix> targets;   // columns in canonical order
  std::optional<SignalMatrix> estimates;

  /// Maps a canonical-order assignment back to file order.
  std::vector<int> to_file_order(const Assignment& assignment) const;
};

/// Throws InvalidParams on malformed content.
Problem parse_problem(std::string_view json_text);
Problem load_problem(const std::string& path);

/// Serializes in canonical order. Signals are written as float32.
std::string serialize_problem(const Problem& problem, bool include_edges = false);

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);

/// Column-major float32 little-endian blocks <-> SignalMatrix.
std::string encode_signals(const SignalMatrix& signals);
SignalMatrix decode_signals(std::string_view base64, std::size_t num_samples,
                            std::size_t num_columns);

}  // namespace pit
