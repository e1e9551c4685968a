#include "pit/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "pit/graphpit.hpp"
#include "pit/losses.hpp"
#include "pit/synth.hpp"
#include "pit/upit.hpp"

namespace pit {

namespace {

constexpr double kLossTolerance = 1e-9;

std::size_t state_bound(int channels) {
  std::size_t bound = 1;
  for (int k = 1; k < channels; ++k) bound *= static_cast<std::size_t>(channels);
  return bound;
}

std::string describe(std::size_t trial, std::uint64_t seed) {
  std::ostringstream out;
  out << "trial " << trial << " (seed " << seed << ")";
  return out.str();
}

void record_state_bound(PropertyResult* tally, const SolveResult& result, int channels,
                        const std::string& where) {
  if (!tally) return;
  const std::size_t bound = state_bound(channels);
  if (result.max_extended_states <= bound && result.max_states <= bound) {
    ++tally->passed;
  } else {
    tally->fail(where + ": " + std::to_string(result.max_extended_states) + " states > " +
                std::to_string(bound));
  }
}

}  // namespace

void PropertyResult::fail(std::string message) {
  if (failed == 0) first_failure = std::move(message);
  ++failed;
}

PropertyResult check_decomposition_identity(const VerifyOptions& options) {
  PropertyResult tally{"decomposition_identity"};
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t seed = derive_seed(options.seed, trial);
    std::mt19937_64 rng(seed);
    const int channels = options.channels[trial % options.channels.size()];
    const auto num_utterances =
        std::uniform_int_distribution<std::size_t>(1, options.max_utterances)(rng);
    const auto length = static_cast<std::int64_t>(options.num_samples);
    const UtteranceLayout layout = random_layout(num_utterances, length, channels, rng());
    const SignalMatrix targets = noise_targets(layout, rng());
    const SignalMatrix estimates =
        noise_signals(options.num_samples, static_cast<std::size_t>(channels), rng());

    const Decomposition decomposition = score_matrix_sa_sdr_dot(estimates, targets);
    const ScoreMatrix scores =
        options.negate_scores ? decomposition.scores.scaled(-1.0) : decomposition.scores;
    const OverlapGraph graph = build_overlap_graph(layout);

    double worst = 0.0;
    for (const Assignment& assignment : enumerate_colorings(graph, channels)) {
      const double via_scores = decomposition.f(trace_score(scores, assignment));
      const double direct = sa_sdr_loss(estimates, targets_from_assignment(targets, assignment));
      worst = std::max(worst, std::abs(via_scores - direct));
    }
    tally.max_error = std::max(tally.max_error, worst);
    if (worst <= kLossTolerance) {
      ++tally.passed;
    } else {
      tally.fail(describe(trial, seed) + ": deviation " + std::to_string(worst) + " dB");
    }
  }
  return tally;
}

PropertyResult check_upit_equivalence(std::size_t trials, std::uint64_t seed, int min_channels,
                                      int max_channels) {
  PropertyResult tally{"upit_equivalence"};
  for (int channels = min_channels; channels <= max_channels; ++channels) {
    for (std::size_t trial = 0; trial < trials; ++trial) {
      const std::uint64_t instance_seed =
          derive_seed(seed, static_cast<std::uint64_t>(channels) * 1000003u + trial);
      const auto c = static_cast<std::size_t>(channels);
      const ScoreMatrix scores = random_score_matrix(c, c, instance_seed);
      const SolveResult exhaustive = solve_upit_brute_force(scores);
      const SolveResult hungarian = solve_upit_hungarian(scores);
      tally.max_error = std::max(tally.max_error, std::abs(exhaustive.score - hungarian.score));
      if (hungarian.score == exhaustive.score && hungarian.assignment.is_permutation()) {
        ++tally.passed;
      } else {
        tally.fail("C=" + std::to_string(channels) + " " + describe(trial, instance_seed));
      }
    }
  }
  return tally;
}

GraphPitSuite check_graphpit_solvers(const VerifyOptions& options) {
  GraphPitSuite suite;
  std::vector<int> channels;
  for (int c : options.channels) {
    if (c <= 3) channels.push_back(c);
  }
  if (channels.empty()) channels = {2, 3};

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t seed = derive_seed(options.seed ^ 0x51ed2701u, trial);
    std::mt19937_64 rng(seed);
    const int c = channels[trial % channels.size()];
    const auto num_utterances =
        std::uniform_int_distribution<std::size_t>(1, options.max_solver_utterances)(rng);
    const UtteranceLayout layout =
        trial % 2 == 0 ? chain_layout(num_utterances, 2.0, 0.5, 8000.0)
                       : random_layout(num_utterances, static_cast<std::int64_t>(options.num_samples), c, rng());
    const OverlapGraph graph = build_overlap_graph(layout);
    const ScoreMatrix scores = random_score_matrix(static_cast<std::size_t>(c), layout.size(), rng());
    const std::string where = describe(trial, seed);

    try {
      const SolveResult brute = solve_graphpit_brute_force(scores, graph, c);
      const SolveResult bnb = solve_graphpit_branch_bound(scores, graph, c);
      const SolveResult dp = solve_graphpit_dp(scores, layout, graph, c);
      const SolveResult per_component = solve_per_component(Algorithm::kDp, scores, graph, c);
      const SolveResult dfs = solve_graphpit_dfs(scores, graph, c);

      const bool equal = bnb.score == brute.score && dp.score == brute.score &&
                         per_component.score == brute.score &&
                         is_valid_coloring(graph, brute.assignment) &&
                         is_valid_coloring(graph, bnb.assignment) &&
                         is_valid_coloring(graph, dp.assignment) &&
                         is_valid_coloring(graph, per_component.assignment);
      if (equal) {
        ++suite.exactness.passed;
      } else {
        std::ostringstream msg;
        msg.precision(17);
        msg << where << ": bf " << brute.score << " bnb " << bnb.score << " dp " << dp.score
            << " per-component " << per_component.score;
        suite.exactness.fail(msg.str());
      }
      if (is_valid_coloring(graph, dfs.assignment) && dfs.score >= brute.score) {
        ++suite.dfs_soundness.passed;
      } else {
        suite.dfs_soundness.fail(where);
      }
      record_state_bound(&suite.dp_state_bound, dp, c, where);
      record_state_bound(&suite.dp_state_bound, per_component, c, where);
    } catch (const Error& e) {
      suite.exactness.fail(where + ": " + e.what());
    }
  }
  return suite;
}

PropertyResult check_unoptimized_agreement(const VerifyOptions& options,
                                           PropertyResult* dp_state_bound) {
  PropertyResult tally{"unoptimized_agreement"};
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    const std::uint64_t seed = derive_seed(options.seed ^ 0x0ddba11u, trial);
    std::mt19937_64 rng(seed);
    const int c = options.channels.front();
    const auto num_utterances =
        std::uniform_int_distribution<std::size_t>(1, options.max_utterances)(rng);
    const UtteranceLayout layout =
        random_layout(num_utterances, static_cast<std::int64_t>(options.num_samples), c, rng());
    const SignalMatrix targets = noise_targets(layout, rng());
    const SignalMatrix estimates =
        noise_signals(options.num_samples, static_cast<std::size_t>(c), rng());
    const std::string where = describe(trial, seed);
    try {
      const SolveResult direct = solve_graphpit_unoptimized(estimates, targets, layout, c);
      const SolveResult decomposed = graphpit_loss(estimates, targets, layout, c, Algorithm::kDp);
      const double deviation = std::abs(*direct.loss - *decomposed.loss);
      tally.max_error = std::max(tally.max_error, deviation);
      if (deviation <= kLossTolerance) {
        ++tally.passed;
      } else {
        tally.fail(where + ": deviation " + std::to_string(deviation) + " dB");
      }
      record_state_bound(dp_state_bound, decomposed, c, where);
    } catch (const Error& e) {
      tally.fail(where + ": " + e.what());
    }
  }
  return tally;
}

PropertyResult check_coloring_count(std::size_t max_utterances, const std::vector<int>& channels) {
  PropertyResult tally{"coloring_count"};
  for (int c : channels) {
    for (std::size_t u = 1; u <= max_utterances; ++u) {
      const OverlapGraph graph = build_overlap_graph(chain_layout(u, 2.0, 0.5, 8000.0));
      std::uint64_t expected = static_cast<std::uint64_t>(c);
      for (std::size_t k = 1; k < u; ++k) expected *= static_cast<std::uint64_t>(c - 1);
      const std::uint64_t counted = count_colorings(graph, c);
      if (counted == expected) {
        ++tally.passed;
      } else {
        tally.fail("U=" + std::to_string(u) + " C=" + std::to_string(c) + ": counted " +
                   std::to_string(counted) + ", expected " + std::to_string(expected));
      }
    }
  }
  return tally;
}

bool VerifyReport::ok() const {
  return std::all_of(properties.begin(), properties.end(),
                     [](const PropertyResult& p) { return p.ok(); });
}

VerifyReport run_verification(const VerifyOptions& options) {
  VerifyReport report;
  if (options.trials == 0) return report;
  if (options.channels.empty()) throw InvalidParams("at least one channel count is required");

  report.properties.push_back(check_decomposition_identity(options));
  report.properties.push_back(check_upit_equivalence(std::max<std::size_t>(1, options.trials / 7),
                                                     options.seed, 2, 8));
  GraphPitSuite suite = check_graphpit_solvers(options);
  VerifyOptions two_channels = options;
  two_channels.channels = {2};
  two_channels.trials = std::max<std::size_t>(1, options.trials / 5);
  report.properties.push_back(check_unoptimized_agreement(two_channels, &suite.dp_state_bound));
  report.properties.push_back(std::move(suite.exactness));
  report.properties.push_back(std::move(suite.dfs_soundness));
  report.properties.push_back(std::move(suite.dp_state_bound));
  report.properties.push_back(check_coloring_count(10, {2, 3, 4}));
  return report;
}

}  // namespace pit
