#include "pit/bench.hpp"

#include <chrono>
#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>

#include "pit/graphpit.hpp"
#include "pit/losses.hpp"
#include "pit/synth.hpp"

namespace pit {

namespace {

using Clock = std::chrono::steady_clock;

// Keeps results observable so the timed calls are not optimized away.
volatile double g_sink = 0.0;

BenchRow measure(const std::string& name, std::size_t num_utterances, int channels,
                 std::size_t reps, std::size_t warmup, const std::function<double()>& run) {
  for (std::size_t i = 0; i < warmup; ++i) g_sink = g_sink + run();
  std::vector<double> seconds;
  seconds.reserve(reps);
  for (std::size_t i = 0; i < reps; ++i) {
    const auto begin = Clock::now();
    const double value = run();
    const auto end = Clock::now();
    g_sink = g_sink + value;
    seconds.push_back(std::chrono::duration<double>(end - begin).count());
  }
  double mean = 0.0;
  for (double s : seconds) mean += s;
  mean /= static_cast<double>(reps);
  double variance = 0.0;
  for (double s : seconds) variance += (s - mean) * (s - mean);
  variance /= static_cast<double>(reps);
  return {name, num_utterances, channels, mean, std::sqrt(variance), reps};
}

}  // namespace

std::vector<BenchRow> run_benchmark(const BenchOptions& options) {
  if (options.min_utterances < 1 || options.min_utterances > options.max_utterances) {
    throw InvalidParams("utterance range is empty");
  }
  if (options.reps < 1) throw InvalidParams("at least one repetition is required");
  for (const std::string& name : options.algorithms) {
    if (name != "score_matrix" && !parse_algorithm(name)) {
      throw InvalidParams("unknown algorithm '" + name + "'");
    }
  }

  std::vector<BenchRow> rows;
  const int c = options.channels;
  for (std::size_t u = options.min_utterances; u <= options.max_utterances; ++u) {
    const UtteranceLayout layout =
        chain_layout(u, options.utterance_seconds, options.overlap_seconds, options.sample_rate);
    const SignalMatrix targets = noise_targets(layout, derive_seed(options.seed, 2 * u));
    const SignalMatrix estimates = noise_signals(static_cast<std::size_t>(layout.total_length()),
                                                 static_cast<std::size_t>(c),
                                                 derive_seed(options.seed, 2 * u + 1));
    const OverlapGraph graph = build_overlap_graph(layout);
    const ScoreMatrix scores = score_matrix_sa_sdr_dot(estimates, targets).scores;

    for (const std::string& name : options.algorithms) {
      auto limit = options.max_utterances_per_algorithm.find(name);
      if (limit != options.max_utterances_per_algorithm.end() && u > limit->second) continue;

      std::function<double()> run;
      if (name == "score_matrix") {
        run = [&] { return score_matrix_sa_sdr_dot(estimates, targets).scores(0, 0); };
      } else if (name == "unopt" || name == "unoptimized") {
        run = [&] { return *solve_graphpit_unoptimized(estimates, targets, layout, c).loss; };
      } else {
        const Algorithm algorithm = *parse_algorithm(name);
        run = [&, algorithm] { return solve_graphpit(algorithm, scores, graph, c).score; };
      }
      rows.push_back(measure(name, u, c, options.reps, options.warmup, run));
    }
  }
  return rows;
}

void write_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "algorithm,U,C,mean_runtime_s,std_runtime_s,reps\n";
  for (const BenchRow& row : rows) {
    out << row.algorithm << ',' << row.num_utterances << ',' << row.channels << ','
        << row.mean_runtime_s << ',' << row.std_runtime_s << ',' << row.reps << '\n';
  }
}

void write_gnuplot(std::ostream& out, const std::vector<BenchRow>& rows) {
  std::vector<std::string> order;
  for (const BenchRow& row : rows) {
    if (std::find(order.begin(), order.end(), row.algorithm) == order.end()) order.push_back(row.algorithm);
  }
  bool first = true;
  for (const std::string& name : order) {
    if (!first) out << "\n\n";
    first = false;
    out << "# " << name << "\n# U mean_runtime_s std_runtime_s\n";
    for (const BenchRow& row : rows) {
      if (row.algorithm == name) {
        out << row.num_utterances << ' ' << row.mean_runtime_s << ' ' << row.std_runtime_s << '\n';
      }
    }
  }
}

}  // namespace pit
