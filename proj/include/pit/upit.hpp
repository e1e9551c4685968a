#pragma once

#include "pit/core.hpp"
#include "pit/losses.hpp"

namespace pit {

/// Exhaustive search over all C! permutations. Ties go to the lexicographically
/// smallest permutation. Throws DimensionMismatch for non-square M.
SolveResult solve_upit_brute_force(const ScoreMatrix& scores);

/// Linear sum assignment in O(C^3) (shortest augmenting paths with potentials).
SolveResult solve_upit_hungarian(const ScoreMatrix& scores);

/// Builds M and f for `kind`, solves with the Hungarian algorithm and fills in the loss.
SolveResult solve_upit(const SignalMatrix& estimates, const SignalMatrix& targets,
                       DecompositionKind kind);

}  // namespace pit
