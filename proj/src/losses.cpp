#include "pit/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pit/kernels.hpp"

namespace pit {

namespace {

void require_same_shape(const SignalMatrix& estimates, const SignalMatrix& targets) {
  if (estimates.num_samples() != targets.num_samples() ||
      estimates.num_columns() != targets.num_columns()) {
    throw DimensionMismatch("estimates and targets differ in shape");
  }
}

void require_same_length(const SignalMatrix& estimates, const SignalMatrix& targets) {
  if (estimates.num_samples() != targets.num_samples()) {
    throw DimensionMismatch("estimates and targets differ in length");
  }
}

std::vector<double> nonzero_energies(const SignalMatrix& targets) {
  auto energies = kernels::column_energies(targets);
  for (std::size_t u = 0; u < energies.size(); ++u) {
    if (energies[u] <= 0.0) throw ZeroTargetEnergy(u);
  }
  return energies;
}

double total(const std::vector<double>& values) {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

}  // namespace

double clamped_sdr_db(double target_energy, double error_energy) {
  return -10.0 * std::log10(target_energy / std::max(error_energy, kSdrEpsilon * target_energy));
}

double sdr_loss(std::span<const double> estimate, std::span<const double> target) {
  if (estimate.size() != target.size()) throw DimensionMismatch("estimate and target differ in length");
  double energy = 0.0, error = 0.0;
  for (std::size_t t = 0; t < target.size(); ++t) {
    energy += target[t] * target[t];
    const double d = target[t] - estimate[t];
    error += d * d;
  }
  if (energy <= 0.0) throw ZeroTargetEnergy();
  return clamped_sdr_db(energy, error);
}

double a_sdr_loss(const SignalMatrix& estimates, const SignalMatrix& targets) {
  require_same_shape(estimates, targets);
  if (targets.num_columns() == 0) throw InvalidParams("a-SDR of zero channels");
  double sum = 0.0;
  for (std::size_t c = 0; c < targets.num_columns(); ++c) {
    try {
      sum += sdr_loss(estimates.column(c), targets.column(c));
    } catch (const ZeroTargetEnergy&) {
      throw ZeroTargetEnergy(c);
    }
  }
  return sum / static_cast<double>(targets.num_columns());
}

double sa_sdr_loss(const SignalMatrix& estimates, const SignalMatrix& targets) {
  require_same_shape(estimates, targets);
  double energy = 0.0, error = 0.0;
  for (std::size_t c = 0; c < targets.num_columns(); ++c) {
    auto s = targets.column(c);
    auto e = estimates.column(c);
    for (std::size_t t = 0; t < s.size(); ++t) {
      energy += s[t] * s[t];
      const double d = s[t] - e[t];
      error += d * d;
    }
  }
  if (energy <= 0.0) throw ZeroTargetEnergy();
  return clamped_sdr_db(energy, error);
}

SignalMatrix targets_from_assignment(const SignalMatrix& utterances, const Assignment& assignment) {
  if (assignment.size() != utterances.num_columns()) {
    throw DimensionMismatch("assignment length does not match the number of utterances");
  }
  SignalMatrix out(utterances.num_samples(), static_cast<std::size_t>(assignment.num_channels()));
  for (std::size_t u = 0; u < assignment.size(); ++u) {
    auto src = utterances.column(u);
    auto dst = out.column(static_cast<std::size_t>(assignment[u]));
    for (std::size_t t = 0; t < src.size(); ++t) dst[t] += src[t];
  }
  return out;
}

const char* to_string(DecompositionKind kind) {
  switch (kind) {
    case DecompositionKind::kASdrPairwise: return "a-sdr-pairwise";
    case DecompositionKind::kSaSdrMse: return "sa-sdr-mse";
    case DecompositionKind::kSaSdrDot: return "sa-sdr-dot";
  }
  return "unknown";
}

double LossDecomposition::operator()(double trace) const {
  switch (kind) {
    case DecompositionKind::kASdrPairwise:
      return trace / static_cast<double>(num_channels);
    case DecompositionKind::kSaSdrMse:
      return clamped_sdr_db(target_energy, static_cast<double>(num_samples) * trace);
    case DecompositionKind::kSaSdrDot:
      return clamped_sdr_db(target_energy, target_energy + estimate_energy + 2.0 * trace);
  }
  return trace;
}

Decomposition score_matrix_pairwise_sdr(const SignalMatrix& estimates, const SignalMatrix& targets) {
  require_same_shape(estimates, targets);
  const auto energies = nonzero_energies(targets);
  const std::size_t channels = estimates.num_columns();
  auto values = kernels::cross_squared_distance(estimates, targets);
  for (std::size_t c = 0; c < channels; ++c) {
    for (std::size_t u = 0; u < channels; ++u) {
      double& m = values[c * channels + u];
      m = clamped_sdr_db(energies[u], m);
    }
  }
  LossDecomposition f{DecompositionKind::kASdrPairwise, total(energies),
                      total(kernels::column_energies(estimates)), targets.num_samples(), channels};
  return {ScoreMatrix(channels, channels, std::move(values)), f};
}

Decomposition score_matrix_sa_sdr_mse(const SignalMatrix& estimates, const SignalMatrix& targets) {
  require_same_shape(estimates, targets);
  if (targets.num_samples() == 0) throw InvalidParams("signals have zero length");
  const auto energies = nonzero_energies(targets);
  const std::size_t channels = estimates.num_columns();
  auto values = kernels::cross_squared_distance(estimates, targets);
  const double inv_length = 1.0 / static_cast<double>(targets.num_samples());
  for (double& m : values) m *= inv_length;
  LossDecomposition f{DecompositionKind::kSaSdrMse, total(energies),
                      total(kernels::column_energies(estimates)), targets.num_samples(), channels};
  return {ScoreMatrix(channels, channels, std::move(values)), f};
}

Decomposition score_matrix_sa_sdr_dot(const SignalMatrix& estimates, const SignalMatrix& targets) {
  require_same_length(estimates, targets);
  const auto energies = nonzero_energies(targets);
  auto values = kernels::cross_dot(estimates, targets);
  for (double& m : values) m = -m;
  LossDecomposition f{DecompositionKind::kSaSdrDot, total(energies),
                      total(kernels::column_energies(estimates)), targets.num_samples(),
                      estimates.num_columns()};
  return {ScoreMatrix(estimates.num_columns(), targets.num_columns(), std::move(values)), f};
}

Decomposition build_decomposition(DecompositionKind kind, const SignalMatrix& estimates,
                                  const SignalMatrix& targets) {
  switch (kind) {
    case DecompositionKind::kASdrPairwise: return score_matrix_pairwise_sdr(estimates, targets);
    case DecompositionKind::kSaSdrMse: return score_matrix_sa_sdr_mse(estimates, targets);
    case DecompositionKind::kSaSdrDot: return score_matrix_sa_sdr_dot(estimates, targets);
  }
  throw InvalidParams("unknown decomposition kind");
}

}  // namespace pit
