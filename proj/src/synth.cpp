#include "pit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <random>

namespace pit {

UtteranceLayout chain_layout(std::size_t num_utterances, double utterance_seconds,
                             double overlap_seconds, double sample_rate) {
  if (num_utterances < 1) throw InvalidParams("a chain needs at least one utterance");
  if (!(sample_rate > 0.0)) throw InvalidParams("sample rate must be positive");
  const auto length = static_cast<std::int64_t>(std::llround(utterance_seconds * sample_rate));
  const auto overlap = static_cast<std::int64_t>(std::llround(overlap_seconds * sample_rate));
  if (length < 1) throw InvalidParams("utterance length must be at least one sample");
  if (overlap < 0 || overlap >= length) {
    throw InvalidParams("overlap must be non-negative and shorter than an utterance");
  }
  const std::int64_t hop = length - overlap;
  std::vector<Interval> intervals;
  intervals.reserve(num_utterances);
  for (std::size_t u = 0; u < num_utterances; ++u) {
    const std::int64_t start = static_cast<std::int64_t>(u) * hop;
    intervals.emplace_back(start, start + length);
  }
  const std::int64_t total = intervals.back().end;
  return UtteranceLayout(std::move(intervals), total);
}

namespace {

void validate(const SyntheticMeetingSpec& spec) {
  if (spec.num_speakers < 1) throw InvalidParams("at least one speaker is required");
  if (!(spec.duration_seconds > 0.0)) throw InvalidParams("duration must be positive");
  if (!(spec.sample_rate > 0.0)) throw InvalidParams("sample rate must be positive");
  if (!(spec.overlap_ratio_low >= 0.0 && spec.overlap_ratio_low <= spec.overlap_ratio_high &&
        spec.overlap_ratio_high < 1.0)) {
    throw InvalidParams("overlap ratio range must satisfy 0 <= low <= high < 1");
  }
  if (!(spec.gain_db_low <= spec.gain_db_high)) throw InvalidParams("gain range is inverted");
  if (!(spec.min_utterance_seconds > 0.0 &&
        spec.min_utterance_seconds <= spec.max_utterance_seconds)) {
    throw InvalidParams("utterance length range is invalid");
  }
  if (spec.max_concurrency < 1) throw InvalidParams("max_concurrency must be at least 1");
  if (spec.max_utterance_seconds > spec.duration_seconds) {
    throw InvalidParams("utterances may not be longer than the meeting");
  }
}

}  // namespace

SyntheticMeeting generate_meeting_layout(const SyntheticMeetingSpec& spec) {
  validate(spec);
  std::mt19937_64 rng(spec.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const auto total = static_cast<std::int64_t>(std::llround(spec.duration_seconds * spec.sample_rate));
  const auto min_length =
      std::max<std::int64_t>(2, std::llround(spec.min_utterance_seconds * spec.sample_rate));
  const auto max_length =
      std::max(min_length, static_cast<std::int64_t>(std::llround(spec.max_utterance_seconds * spec.sample_rate)));
  const auto max_gap = static_cast<std::int64_t>(std::llround(0.5 * spec.sample_rate));
  std::uniform_int_distribution<std::int64_t> length_dist(min_length, max_length);
  std::uniform_int_distribution<std::int64_t> gap_dist(0, max_gap);

  SyntheticMeeting meeting;
  const double ratio = spec.overlap_ratio_low + (spec.overlap_ratio_high - spec.overlap_ratio_low) * unit(rng);
  meeting.target_overlap_ratio = ratio;
  const bool may_overlap = spec.max_concurrency >= 2 && spec.num_speakers >= 2;

  std::vector<Interval> intervals;
  double overlapped = 0.0, speech = 0.0;
  std::int64_t last_end = 0, second_end = 0;
  int last_speaker = -1;
  while (true) {
    const std::int64_t length = length_dist(rng);
    std::int64_t overlap = 0;
    if (!intervals.empty()) {
      // Overlap that would put the running ratio exactly on target after this utterance.
      const double wanted =
          (ratio * (speech + static_cast<double>(length)) - overlapped) / (1.0 + ratio);
      const std::int64_t limit = may_overlap ? std::min(length - 1, last_end - second_end) : 0;
      const auto rounded = static_cast<std::int64_t>(std::llround(wanted));
      overlap = rounded > 0 && limit > 0 ? std::min(rounded, limit) : -gap_dist(rng);
    }
    const std::int64_t start = intervals.empty() ? 0 : last_end - overlap;
    const std::int64_t end = start + length;
    if (end > total) break;

    // Any speaker except the one still talking during the overlap.
    int speaker;
    if (overlap > 0) {
      std::uniform_int_distribution<int> pick(0, spec.num_speakers - 2);
      speaker = pick(rng);
      if (speaker >= last_speaker) ++speaker;
    } else {
      std::uniform_int_distribution<int> pick(0, spec.num_speakers - 1);
      speaker = pick(rng);
    }
    const double gain_db = spec.gain_db_low + (spec.gain_db_high - spec.gain_db_low) * unit(rng);

    intervals.emplace_back(start, end);
    meeting.speakers.push_back(speaker);
    meeting.gains_db.push_back(gain_db);
    if (overlap > 0) {
      overlapped += static_cast<double>(overlap);
      speech += static_cast<double>(length - overlap);
    } else {
      speech += static_cast<double>(length);
    }
    second_end = last_end;
    last_end = end;
    last_speaker = speaker;
  }
  meeting.layout = UtteranceLayout(std::move(intervals), total);
  return meeting;
}

SyntheticMeeting generate_meeting(const SyntheticMeetingSpec& spec) {
  SyntheticMeeting meeting = generate_meeting_layout(spec);
  // Signals come from a separate stream so the layout does not depend on them.
  SignalMatrix targets = noise_targets(meeting.layout, spec.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t u = 0; u < meeting.layout.size(); ++u) {
    const double gain = std::pow(10.0, meeting.gains_db[u] / 20.0);
    for (double& x : targets.column(u)) x *= gain;
  }
  meeting.targets = std::move(targets);
  return meeting;
}

double overlap_ratio(const UtteranceLayout& layout) {
  std::map<std::int64_t, int> deltas;
  for (const Interval& iv : layout.intervals()) {
    ++deltas[iv.start];
    --deltas[iv.end];
  }
  std::int64_t overlapped = 0, speech = 0, previous = 0;
  int active = 0;
  for (auto [time, delta] : deltas) {
    if (active >= 1) speech += time - previous;
    if (active >= 2) overlapped += time - previous;
    active += delta;
    previous = time;
  }
  return speech == 0 ? 0.0 : static_cast<double>(overlapped) / static_cast<double>(speech);
}

UtteranceLayout random_layout(std::size_t num_utterances, std::int64_t total_length,
                              int max_concurrency, std::uint64_t seed) {
  if (num_utterances < 1) throw InvalidParams("a layout needs at least one utterance");
  if (max_concurrency < 1) throw InvalidParams("max_concurrency must be at least 1");
  if (total_length < 4 * static_cast<std::int64_t>(num_utterances)) {
    throw InvalidParams("total length is too short for the requested number of utterances");
  }
  constexpr std::int64_t kMeanLength = 1000;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> length_dist(kMeanLength / 2, 3 * kMeanLength / 2);
  std::uniform_int_distribution<std::int64_t> hop_dist(0, kMeanLength);

  std::vector<Interval> raw;
  std::int64_t start = 0;
  for (std::size_t u = 0; u < num_utterances; ++u) {
    const std::int64_t length = length_dist(rng);
    if (u > 0) start += hop_dist(rng);
    // Delay the onset until fewer than max_concurrency utterances are active.
    while (true) {
      std::int64_t earliest_end = std::numeric_limits<std::int64_t>::max();
      int active = 0;
      for (const Interval& iv : raw) {
        if (iv.end > start) {
          ++active;
          earliest_end = std::min(earliest_end, iv.end);
        }
      }
      if (active < max_concurrency) break;
      start = earliest_end;
    }
    raw.emplace_back(start, start + length);
  }

  // Shrink onto [0, total_length); flooring keeps the order and adds no overlaps.
  std::int64_t max_end = 0;
  for (const Interval& iv : raw) max_end = std::max(max_end, iv.end);
  const double scale = std::min(1.0, static_cast<double>(total_length) / static_cast<double>(max_end));
  std::vector<Interval> intervals;
  intervals.reserve(raw.size());
  for (const Interval& iv : raw) {
    const auto s = static_cast<std::int64_t>(std::floor(static_cast<double>(iv.start) * scale));
    auto e = static_cast<std::int64_t>(std::floor(static_cast<double>(iv.end) * scale));
    e = std::min(std::max(e, s + 1), total_length);
    intervals.emplace_back(s, e);
  }
  return UtteranceLayout::canonicalize(std::move(intervals), total_length).layout;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

ScoreMatrix random_score_matrix(std::size_t rows, std::size_t cols, std::uint64_t seed) {
  if (rows < 1 || cols < 1) throw InvalidParams("score matrix needs at least one row and column");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> values(rows * cols);
  for (double& v : values) v = dist(rng);
  return ScoreMatrix(rows, cols, std::move(values));
}

SignalMatrix noise_targets(const UtteranceLayout& layout, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SignalMatrix out(static_cast<std::size_t>(layout.total_length()), layout.size());
  for (std::size_t u = 0; u < layout.size(); ++u) {
    auto col = out.column(u);
    for (auto t = layout[u].start; t < layout[u].end; ++t) col[static_cast<std::size_t>(t)] = dist(rng);
  }
  return out;
}

SignalMatrix noise_signals(std::size_t num_samples, std::size_t num_columns, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, 1.0);
  SignalMatrix out(num_samples, num_columns);
  for (std::size_t n = 0; n < num_columns; ++n) {
    for (double& x : out.column(n)) x = dist(rng);
  }
  return out;
}

}  // namespace pit
