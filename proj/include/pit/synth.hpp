#pragma once

#include <cstdint>
#include <vector>

#include "pit/core.hpp"

namespace pit {

/// Utterances of equal length, each starting `overlap_seconds` before the previous
/// one ends. The overlap graph is a path.
UtteranceLayout chain_layout(std::size_t num_utterances, double utterance_seconds,
                             double overlap_seconds, double sample_rate);

struct SyntheticMeetingSpec {
  int num_speakers = 5;
  double duration_seconds = 120.0;
  double overlap_ratio_low = 0.2;
  double overlap_ratio_high = 0.4;
  double gain_db_low = 0.0;
  double gain_db_high = 5.0;
  double sample_rate = 8000.0;
  double min_utterance_seconds = 1.0;
  double max_utterance_seconds = 5.0;
  /// Upper bound on simultaneously active utterances (the separator's channel count).
  int max_concurrency = 2;
  std::uint64_t seed = 0;
};

struct SyntheticMeeting {
  UtteranceLayout layout;
  std::vector<int> speakers;
  std::vector<double> gains_db;
  /// Overlap ratio drawn for this meeting; the layout tracks it.
  double target_overlap_ratio = 0.0;
  /// White-noise utterances (T x U); empty when only the layout was requested.
  SignalMatrix targets;
};

/// Meeting layout only. Throws InvalidParams for inconsistent specs.
SyntheticMeeting generate_meeting_layout(const SyntheticMeetingSpec& spec);

/// Layout plus seeded white-noise utterance signals scaled by their gains.
SyntheticMeeting generate_meeting(const SyntheticMeetingSpec& spec);

/// Overlapped time (>= 2 active) divided by speech time (>= 1 active).
double overlap_ratio(const UtteranceLayout& layout);

/// Start-sorted random layout of U utterances in [0, total_length) with at most
/// `max_concurrency` utterances active at any time.
UtteranceLayout random_layout(std::size_t num_utterances, std::int64_t total_length,
                              int max_concurrency, std::uint64_t seed);

/// Derives the seed of the index-th item of a seeded stream (splitmix64).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

/// C x U matrix with i.i.d. entries uniform in [-1, 1].
ScoreMatrix random_score_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed);

/// Unit-variance Gaussian noise inside every utterance's interval, zero elsewhere.
SignalMatrix noise_targets(const UtteranceLayout& layout, std::uint64_t seed);

/// Dense unit-variance Gaussian noise, T x N.
SignalMatrix noise_signals(std::size_t num_samples, std::size_t num_columns, std::uint64_t seed);

}  // namespace pit
