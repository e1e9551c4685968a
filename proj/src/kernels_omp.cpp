#include <algorithm>

#include "pit/kernels.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pit::kernels {

namespace {

// Samples per time block; two blocks of ~100 columns stay in L2.
constexpr std::size_t kTimeBlock = 2048;

void require_same_length(const SignalMatrix& a, const SignalMatrix& b) {
  if (a.num_samples() != b.num_samples()) {
    throw DimensionMismatch("signal matrices differ in length: " + std::to_string(a.num_samples()) +
                            " vs " + std::to_string(b.num_samples()));
  }
}

template <typename Op>
std::vector<double> cross_reduce(const SignalMatrix& a, const SignalMatrix& b, Op op) {
  require_same_length(a, b);
  const std::size_t num_samples = a.num_samples();
  const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(a.num_columns());
  const std::size_t cols = b.num_columns();
  std::vector<double> out(a.num_columns() * cols, 0.0);
  double* result = out.data();

#pragma omp parallel
  for (std::size_t t0 = 0; t0 < num_samples; t0 += kTimeBlock) {
    const std::size_t t1 = std::min(num_samples, t0 + kTimeBlock);
    // Static schedule hands every thread the same rows in each block.
#pragma omp for schedule(static) nowait
    for (std::ptrdiff_t i = 0; i < rows; ++i) {
      const double* x = a.column(static_cast<std::size_t>(i)).data();
      double* row = result + static_cast<std::size_t>(i) * cols;
      for (std::size_t j = 0; j < cols; ++j) {
        const double* y = b.column(j).data();
        double acc = 0.0;
#pragma omp simd reduction(+ : acc)
        for (std::size_t t = t0; t < t1; ++t) acc += op(x[t], y[t]);
        row[j] += acc;
      }
    }
  }
  return out;
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

std::vector<double> row_sum(const SignalMatrix& signals) {
  const std::size_t num_samples = signals.num_samples();
  const std::size_t num_columns = signals.num_columns();
  const auto num_blocks = static_cast<std::ptrdiff_t>((num_samples + kTimeBlock - 1) / kTimeBlock);
  std::vector<double> out(num_samples, 0.0);
  const double* data = signals.data().data();
  double* result = out.data();
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t block = 0; block < num_blocks; ++block) {
    const std::size_t t0 = static_cast<std::size_t>(block) * kTimeBlock;
    const std::size_t t1 = std::min(num_samples, t0 + kTimeBlock);
    for (std::size_t n = 0; n < num_columns; ++n) {
      const double* x = data + n * num_samples;
#pragma omp simd
      for (std::size_t t = t0; t < t1; ++t) result[t] += x[t];
    }
  }
  return out;
}

std::vector<double> column_energies(const SignalMatrix& signals) {
  const std::ptrdiff_t num_columns = static_cast<std::ptrdiff_t>(signals.num_columns());
  std::vector<double> out(signals.num_columns(), 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t n = 0; n < num_columns; ++n) {
    auto col = signals.column(static_cast<std::size_t>(n));
    const double* x = col.data();
    double acc = 0.0;
#pragma omp simd reduction(+ : acc)
    for (std::size_t t = 0; t < col.size(); ++t) acc += x[t] * x[t];
    out[static_cast<std::size_t>(n)] = acc;
  }
  return out;
}

std::vector<double> cross_dot(const SignalMatrix& a, const SignalMatrix& b) {
  return cross_reduce(a, b, [](double x, double y) { return x * y; });
}

std::vector<double> cross_squared_distance(const SignalMatrix& a, const SignalMatrix& b) {
  return cross_reduce(a, b, [](double x, double y) {
    const double d = x - y;
    return d * d;
  });
}

}  // namespace pit::kernels
