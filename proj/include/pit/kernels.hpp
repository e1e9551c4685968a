#pragma once

// Dense signal kernels behind the score matrices and losses.
//
// The functions in pit::kernels are OpenMP-parallel over output entries and
// blocked over time. pit::kernels::serial holds straightforward single-threaded
// loops with the same signatures; tests and bench_kernels compare the two.

#include <vector>

#include "pit/core.hpp"

namespace pit::kernels {

/// Elementwise sum over columns (length T).
std::vector<double> row_sum(const SignalMatrix& signals);

/// Squared L2 norm of every column.
std::vector<double> column_energies(const SignalMatrix& signals);

/// Row-major a.cols x b.cols matrix of inner products <a_i, b_j>.
std::vector<double> cross_dot(const SignalMatrix& a, const SignalMatrix& b);

/// Row-major a.cols x b.cols matrix of squared distances ||a_i - b_j||^2.
std::vector<double> cross_squared_distance(const SignalMatrix& a, const SignalMatrix& b);

/// Number of OpenMP threads the parallel kernels will use (1 without OpenMP).
int max_threads();

namespace serial {

std::vector<double> row_sum(const SignalMatrix& signals);
std::vector<double> column_energies(const SignalMatrix& signals);
std::vector<double> cross_dot(const SignalMatrix& a, const SignalMatrix& b);
std::vector<double> cross_squared_distance(const SignalMatrix& a, const SignalMatrix& b);

}  // namespace serial
}  // namespace pit::kernels
