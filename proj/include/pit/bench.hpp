#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace pit {

// Runtime measurements on chain layouts. Rows are ordered by U, then by the
// algorithm order given in the options; "score_matrix" times the dot-product
// score matrix alone, every other algorithm starts from a precomputed matrix
// (except "unopt", which works on the signals).

struct BenchOptions {
  /// Any of: score_matrix, unopt, bf, dfs, bnb, dp.
  std::vector<std::string> algorithms{"score_matrix", "unopt", "bf", "bnb", "dfs", "dp"};
  std::size_t min_utterances = 2;
  std::size_t max_utterances = 17;
  int channels = 3;
  std::size_t reps = 50;
  std::size_t warmup = 1;
  double utterance_seconds = 2.0;
  double overlap_seconds = 0.5;
  double sample_rate = 8000.0;
  std::uint64_t seed = 0;
  /// Largest U measured per algorithm; algorithms without an entry run the full range.
  std::map<std::string, std::size_t> max_utterances_per_algorithm{{"unopt", 12}};
};

struct BenchRow {
  std::string algorithm;
  std::size_t num_utterances = 0;
  int channels = 0;
  double mean_runtime_s = 0.0;
  double std_runtime_s = 0.0;
  std::size_t reps = 0;
};

/// Throws InvalidParams for unknown algorithms or empty ranges.
std::vector<BenchRow> run_benchmark(const BenchOptions& options);

/// algorithm,U,C,mean_runtime_s,std_runtime_s,reps
void write_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// One block per algorithm separated by two blank lines (gnuplot `index`).
void write_gnuplot(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace pit
