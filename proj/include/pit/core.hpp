#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pit/error.hpp"

namespace pit {

/// Half-open activity extent [start, end) of one utterance, in samples.
struct Interval {
  std::int64_t start = 0;
  std::int64_t end = 0;

  Interval() = default;
  /// Throws InvalidParams unless 0 <= start < end.
  Interval(std::int64_t start, std::int64_t end);

  std::int64_t length() const { return end - start; }
  bool contains(std::int64_t t) const { return start <= t && t < end; }

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// True iff the two intervals share at least one sample. Touching endpoints do not overlap.
bool intervals_overlap(const Interval& a, const Interval& b);

class UtteranceLayout;

/// A layout in canonical order plus the original index of each canonical position.
struct CanonicalLayout;

/// Utterance extents of one meeting, sorted by (start, end). All intervals lie in [0, T).
class UtteranceLayout {
 public:
  UtteranceLayout() = default;
  /// Throws InvalidParams if the intervals are not sorted or exceed total_length.
  UtteranceLayout(std::vector<Interval> intervals, std::int64_t total_length);

  /// Sorts arbitrary intervals by (start, end, original index).
  static CanonicalLayout canonicalize(std::vector<Interval> intervals, std::int64_t total_length);

  std::size_t size() const { return intervals_.size(); }
  bool empty() const { return intervals_.empty(); }
  std::int64_t total_length() const { return total_length_; }
  const Interval& operator[](std::size_t u) const { return intervals_[u]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  /// Layout restricted to `indices` (which must be ascending), same total length.
  UtteranceLayout subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<Interval> intervals_;
  std::int64_t total_length_ = 0;
};

struct CanonicalLayout {
  UtteranceLayout layout;
  /// order[k] = index in the input of the utterance at canonical position k.
  std::vector<std::size_t> order;
};

/// T x N real matrix stored column-major; one column per signal.
class SignalMatrix {
 public:
  SignalMatrix() = default;
  SignalMatrix(std::size_t num_samples, std::size_t num_columns);
  /// `data` is column-major and must hold num_samples * num_columns values.
  SignalMatrix(std::size_t num_samples, std::size_t num_columns, std::vector<double> data);

  std::size_t num_samples() const { return num_samples_; }
  std::size_t num_columns() const { return num_columns_; }
  bool empty() const { return data_.empty(); }

  std::span<const double> column(std::size_t n) const {
    return {data_.data() + n * num_samples_, num_samples_};
  }
  std::span<double> column(std::size_t n) { return {data_.data() + n * num_samples_, num_samples_}; }

  double operator()(std::size_t t, std::size_t n) const { return data_[n * num_samples_ + t]; }
  double& operator()(std::size_t t, std::size_t n) { return data_[n * num_samples_ + t]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  /// Columns in the given order.
  SignalMatrix select_columns(std::span<const std::size_t> columns) const;

  /// Throws InvalidParams if a column is nonzero outside its utterance's interval.
  void check_supports(const UtteranceLayout& layout) const;

 private:
  std::size_t num_samples_ = 0;
  std::size_t num_columns_ = 0;
  std::vector<double> data_;
};

/// Row sum of S: the mixture of all zero-padded utterances.
std::vector<double> mixture(const SignalMatrix& signals);

/// C x U matrix of scores; rows are output channels, columns are utterances.
class ScoreMatrix {
 public:
  ScoreMatrix() = default;
  /// Row-major values. Throws InvalidParams on non-finite entries.
  ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  double operator()(std::size_t c, std::size_t u) const { return values_[c * cols_ + u]; }
  std::span<const double> values() const { return values_; }

  ScoreMatrix select_columns(std::span<const std::size_t> columns) const;
  ScoreMatrix scaled(double factor) const;
  double min_value() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

/// Maps every utterance to one output channel. Dense form: P in {0,1}^{U x C}.
class Assignment {
 public:
  Assignment() = default;
  /// Throws InvalidParams if a color is outside [0, num_channels).
  Assignment(std::vector<int> colors, int num_channels);

  /// Parses a row-major U x C 0/1 matrix with exactly one 1 per row.
  static Assignment from_dense(std::span<const std::uint8_t> dense, std::size_t num_utterances,
                               int num_channels);
  std::vector<std::uint8_t> to_dense() const;

  std::size_t size() const { return colors_.size(); }
  int num_channels() const { return num_channels_; }
  int operator[](std::size_t u) const { return colors_[u]; }
  const std::vector<int>& colors() const { return colors_; }

  /// True iff U == C and every channel is used exactly once.
  bool is_permutation() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

 private:
  std::vector<int> colors_;
  int num_channels_ = 0;
};

/// Tr(M P), summed over utterances in index order.
double trace_score(const ScoreMatrix& scores, const Assignment& assignment);

struct SolveResult {
  Assignment assignment;
  double score = 0.0;
  std::optional<double> loss;
  bool optimal = true;
  /// Search-tree nodes expanded (enumerating solvers) or states created (DP).
  std::uint64_t nodes = 0;
  /// Largest retained state set; DP only.
  std::size_t max_states = 0;
  /// Largest extended state set before merging; DP only.
  std::size_t max_extended_states = 0;
};

}  // namespace pit
