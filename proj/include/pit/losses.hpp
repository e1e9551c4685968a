#pragma once

#include <span>

#include "pit/core.hpp"

namespace pit {

/// Error energy floor relative to target energy; caps every loss at -100 dB.
inline constexpr double kSdrEpsilon = 1e-10;

/// -10 log10(target_energy / max(error_energy, eps * target_energy)).
double clamped_sdr_db(double target_energy, double error_energy);

/// SDR loss of one estimate in dB (negated, so smaller is better).
/// Throws ZeroTargetEnergy if the target is silent.
double sdr_loss(std::span<const double> estimate, std::span<const double> target);

/// Mean of sdr_loss over paired columns.
double a_sdr_loss(const SignalMatrix& estimates, const SignalMatrix& targets);

/// Source-aggregated SDR: energies are summed over channels before taking the ratio.
double sa_sdr_loss(const SignalMatrix& estimates, const SignalMatrix& targets);

/// S P: column c is the sum of all utterances assigned to channel c.
SignalMatrix targets_from_assignment(const SignalMatrix& utterances, const Assignment& assignment);

enum class DecompositionKind {
  kASdrPairwise,  ///< uPIT only; M holds pairwise SDR losses, f(x) = x / C.
  kSaSdrMse,      ///< uPIT only; M holds per-pair MSE.
  kSaSdrDot,      ///< uPIT and Graph-PIT; M = -(estimates^T targets).
};

const char* to_string(DecompositionKind kind);

/// The strictly increasing map from the optimal trace Tr(MP) to the loss value.
struct LossDecomposition {
  DecompositionKind kind = DecompositionKind::kSaSdrDot;
  double target_energy = 0.0;
  double estimate_energy = 0.0;
  std::size_t num_samples = 0;
  std::size_t num_channels = 0;

  double operator()(double trace) const;
};

struct Decomposition {
  ScoreMatrix scores;
  LossDecomposition f;
};

/// m_{c,u} = sdr_loss(estimate c, target u). Requires U == C.
Decomposition score_matrix_pairwise_sdr(const SignalMatrix& estimates, const SignalMatrix& targets);

/// m_{c,u} = ||target u - estimate c||^2 / T. Requires U == C.
Decomposition score_matrix_sa_sdr_mse(const SignalMatrix& estimates, const SignalMatrix& targets);

/// m_{c,u} = -<estimate c, target u>. Any U; valid for Graph-PIT when targets are
/// zero outside their utterances and the assignment is a valid coloring.
Decomposition score_matrix_sa_sdr_dot(const SignalMatrix& estimates, const SignalMatrix& targets);

Decomposition build_decomposition(DecompositionKind kind, const SignalMatrix& estimates,
                                  const SignalMatrix& targets);

}  // namespace pit
