#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pit {

// Randomized property suites shared by `pit-assign verify` and the acceptance tests.
// Every suite is a pure function of its options; trials draw their instance from
// derive_seed(seed, trial).

struct PropertyResult {
  PropertyResult() = default;
  explicit PropertyResult(std::string property) : name(std::move(property)) {}

  std::string name;
  std::size_t passed = 0;
  std::size_t failed = 0;
  /// Largest observed deviation, where the property has a tolerance.
  double max_error = 0.0;
  std::string first_failure;

  bool ok() const { return failed == 0; }
  void fail(std::string message);
};

struct VerifyOptions {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  /// Largest U for suites that enumerate every coloring.
  std::size_t max_utterances = 8;
  /// Largest U for the Graph-PIT solver comparison.
  std::size_t max_solver_utterances = 12;
  std::vector<int> channels{2, 3};
  std::size_t num_samples = 4000;
  /// Mutation check: negate the score matrix before evaluating f.
  bool negate_scores = false;
};

/// |f(Tr(MP)) - sa_sdr_loss(estimates, S P)| <= 1e-9 dB for every valid coloring P.
PropertyResult check_decomposition_identity(const VerifyOptions& options);

/// Hungarian and exhaustive search agree exactly on `trials` random C x C matrices per C.
PropertyResult check_upit_equivalence(std::size_t trials, std::uint64_t seed, int min_channels,
                                      int max_channels);

struct GraphPitSuite {
  PropertyResult exactness{"graphpit_exactness"};
  PropertyResult dfs_soundness{"dfs_soundness"};
  PropertyResult dp_state_bound{"dp_state_bound"};
};

/// Brute force, branch-and-bound, DP and per-component DP return identical scores on
/// chain and random layouts; DFS is valid and never better than optimal; the DP state
/// sets stay within C^(C-1).
GraphPitSuite check_graphpit_solvers(const VerifyOptions& options);

/// Unoptimized direct-loss search equals graphpit_loss with DP within 1e-9 dB.
/// Also records the DP state bound into `dp_state_bound`.
PropertyResult check_unoptimized_agreement(const VerifyOptions& options,
                                           PropertyResult* dp_state_bound = nullptr);

/// Valid colorings of a chain of U utterances number C (C-1)^(U-1).
PropertyResult check_coloring_count(std::size_t max_utterances, const std::vector<int>& channels);

struct VerifyReport {
  std::vector<PropertyResult> properties;
  bool ok() const;
};

VerifyReport run_verification(const VerifyOptions& options);

}  // namespace pit
