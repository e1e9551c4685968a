#include "pit/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pit/kernels.hpp"

namespace pit {

Interval::Interval(std::int64_t start, std::int64_t end) : start(start), end(end) {
  if (start < 0 || start >= end) {
    throw InvalidParams("invalid interval [" + std::to_string(start) + ", " + std::to_string(end) +
                        ")");
  }
}

bool intervals_overlap(const Interval& a, const Interval& b) {
  return std::max(a.start, b.start) < std::min(a.end, b.end);
}

UtteranceLayout::UtteranceLayout(std::vector<Interval> intervals, std::int64_t total_length)
    : intervals_(std::move(intervals)), total_length_(total_length) {
  if (total_length_ < 0) throw InvalidParams("negative total length");
  for (std::size_t u = 0; u < intervals_.size(); ++u) {
    const Interval& iv = intervals_[u];
    if (iv.start < 0 || iv.start >= iv.end) {
      throw InvalidParams("utterance " + std::to_string(u) + " has an empty or negative extent");
    }
    if (iv.end > total_length_) {
      throw InvalidParams("utterance " + std::to_string(u) + " ends after the total length");
    }
    if (u > 0) {
      const Interval& prev = intervals_[u - 1];
      if (std::pair(prev.start, prev.end) > std::pair(iv.start, iv.end)) {
        throw InvalidParams("intervals are not sorted by start time at utterance " +
                            std::to_string(u));
      }
    }
  }
}

CanonicalLayout UtteranceLayout::canonicalize(std::vector<Interval> intervals,
                                              std::int64_t total_length) {
  std::vector<std::size_t> order(intervals.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::pair(intervals[a].start, intervals[a].end) <
           std::pair(intervals[b].start, intervals[b].end);
  });
  std::vector<Interval> sorted;
  sorted.reserve(intervals.size());
  for (std::size_t k : order) sorted.push_back(intervals[k]);
  return {UtteranceLayout(std::move(sorted), total_length), std::move(order)};
}

UtteranceLayout UtteranceLayout::subset(std::span<const std::size_t> indices) const {
  std::vector<Interval> picked;
  picked.reserve(indices.size());
  for (std::size_t u : indices) picked.push_back(intervals_.at(u));
  return UtteranceLayout(std::move(picked), total_length_);
}

SignalMatrix::SignalMatrix(std::size_t num_samples, std::size_t num_columns)
    : num_samples_(num_samples), num_columns_(num_columns), data_(num_samples * num_columns, 0.0) {}

SignalMatrix::SignalMatrix(std::size_t num_samples, std::size_t num_columns,
                           std::vector<double> data)
    : num_samples_(num_samples), num_columns_(num_columns), data_(std::move(data)) {
  if (data_.size() != num_samples_ * num_columns_) {
    throw DimensionMismatch("signal data holds " + std::to_string(data_.size()) +
                            " values, expected " + std::to_string(num_samples_ * num_columns_));
  }
}

SignalMatrix SignalMatrix::select_columns(std::span<const std::size_t> columns) const {
  SignalMatrix out(num_samples_, columns.size());
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= num_columns_) throw DimensionMismatch("column index out of range");
    auto src = column(columns[k]);
    std::copy(src.begin(), src.end(), out.column(k).begin());
  }
  return out;
}

void SignalMatrix::check_supports(const UtteranceLayout& layout) const {
  if (layout.size() != num_columns_) {
    throw DimensionMismatch("layout has " + std::to_string(layout.size()) + " utterances but " +
                            std::to_string(num_columns_) + " target columns");
  }
  if (static_cast<std::int64_t>(num_samples_) != layout.total_length()) {
    throw DimensionMismatch("signal length does not match the layout's total length");
  }
  for (std::size_t u = 0; u < num_columns_; ++u) {
    auto col = column(u);
    const Interval& iv = layout[u];
    for (std::size_t t = 0; t < num_samples_; ++t) {
      if (col[t] != 0.0 && !iv.contains(static_cast<std::int64_t>(t))) {
        throw InvalidParams("target " + std::to_string(u) + " is nonzero at sample " +
                            std::to_string(t) + " outside its interval");
      }
    }
  }
}

std::vector<double> mixture(const SignalMatrix& signals) {
  if (signals.num_columns() == 0) throw InvalidParams("mixture of an empty signal matrix");
  return kernels::row_sum(signals);
}

ScoreMatrix::ScoreMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows_ * cols_) {
    throw DimensionMismatch("score matrix holds " + std::to_string(values_.size()) +
                            " values, expected " + std::to_string(rows_ * cols_));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw InvalidParams("score matrix contains a non-finite entry");
  }
}

ScoreMatrix ScoreMatrix::select_columns(std::span<const std::size_t> columns) const {
  std::vector<double> picked(rows_ * columns.size());
  for (std::size_t c = 0; c < rows_; ++c) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      picked[c * columns.size() + k] = (*this)(c, columns[k]);
    }
  }
  return ScoreMatrix(rows_, columns.size(), std::move(picked));
}

ScoreMatrix ScoreMatrix::scaled(double factor) const {
  std::vector<double> out(values_);
  for (double& v : out) v *= factor;
  return ScoreMatrix(rows_, cols_, std::move(out));
}

double ScoreMatrix::min_value() const {
  return values_.empty() ? 0.0 : *std::min_element(values_.begin(), values_.end());
}

Assignment::Assignment(std::vector<int> colors, int num_channels)
    : colors_(std::move(colors)), num_channels_(num_channels) {
  if (num_channels_ < 1) throw InvalidParams("an assignment needs at least one channel");
  for (std::size_t u = 0; u < colors_.size(); ++u) {
    if (colors_[u] < 0 || colors_[u] >= num_channels_) {
      throw InvalidParams("utterance " + std::to_string(u) + " assigned to channel " +
                          std::to_string(colors_[u]) + " outside [0, " +
                          std::to_string(num_channels_) + ")");
    }
  }
}

Assignment Assignment::from_dense(std::span<const std::uint8_t> dense, std::size_t num_utterances,
                                  int num_channels) {
  const auto channels = static_cast<std::size_t>(num_channels);
  if (dense.size() != num_utterances * channels) {
    throw DimensionMismatch("dense assignment has the wrong number of entries");
  }
  std::vector<int> colors(num_utterances, -1);
  for (std::size_t u = 0; u < num_utterances; ++u) {
    int ones = 0;
    for (std::size_t c = 0; c < channels; ++c) {
      if (dense[u * channels + c] == 1) {
        ++ones;
        colors[u] = static_cast<int>(c);
      } else if (dense[u * channels + c] != 0) {
        throw InvalidParams("dense assignment entries must be 0 or 1");
      }
    }
    if (ones != 1) {
      throw InvalidParams("row " + std::to_string(u) + " of the assignment matrix needs exactly one 1");
    }
  }
  return Assignment(std::move(colors), num_channels);
}

std::vector<std::uint8_t> Assignment::to_dense() const {
  const auto channels = static_cast<std::size_t>(num_channels_);
  std::vector<std::uint8_t> dense(colors_.size() * channels, 0);
  for (std::size_t u = 0; u < colors_.size(); ++u) {
    dense[u * channels + static_cast<std::size_t>(colors_[u])] = 1;
  }
  return dense;
}

bool Assignment::is_permutation() const {
  if (colors_.size() != static_cast<std::size_t>(num_channels_)) return false;
  std::vector<bool> used(colors_.size(), false);
  for (int c : colors_) {
    if (used[static_cast<std::size_t>(c)]) return false;
    used[static_cast<std::size_t>(c)] = true;
  }
  return true;
}

double trace_score(const ScoreMatrix& scores, const Assignment& assignment) {
  if (assignment.size() != scores.cols() ||
      static_cast<std::size_t>(assignment.num_channels()) != scores.rows()) {
    throw DimensionMismatch("assignment shape does not match the score matrix");
  }
  double score = 0.0;
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    score += scores(static_cast<std::size_t>(assignment[u]), u);
  }
  return score;
}

}  // namespace pit
