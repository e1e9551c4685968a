#include "pit/kernels.hpp"

namespace pit::kernels::serial {

namespace {

void require_same_length(const SignalMatrix& a, const SignalMatrix& b) {
  if (a.num_samples() != b.num_samples()) {
    throw DimensionMismatch("signal matrices differ in length: " + std::to_string(a.num_samples()) +
                            " vs " + std::to_string(b.num_samples()));
  }
}

}  // namespace

std::vector<double> row_sum(const SignalMatrix& signals) {
  std::vector<double> out(signals.num_samples(), 0.0);
  for (std::size_t n = 0; n < signals.num_columns(); ++n) {
    auto col = signals.column(n);
    for (std::size_t t = 0; t < col.size(); ++t) out[t] += col[t];
  }
  return out;
}

std::vector<double> column_energies(const SignalMatrix& signals) {
  std::vector<double> out(signals.num_columns(), 0.0);
  for (std::size_t n = 0; n < signals.num_columns(); ++n) {
    double acc = 0.0;
    for (double x : signals.column(n)) acc += x * x;
    out[n] = acc;
  }
  return out;
}

std::vector<double> cross_dot(const SignalMatrix& a, const SignalMatrix& b) {
  require_same_length(a, b);
  const std::size_t rows = a.num_columns(), cols = b.num_columns();
  std::vector<double> out(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    auto x = a.column(i);
    for (std::size_t j = 0; j < cols; ++j) {
      auto y = b.column(j);
      double acc = 0.0;
      for (std::size_t t = 0; t < x.size(); ++t) acc += x[t] * y[t];
      out[i * cols + j] = acc;
    }
  }
  return out;
}

std::vector<double> cross_squared_distance(const SignalMatrix& a, const SignalMatrix& b) {
  require_same_length(a, b);
  const std::size_t rows = a.num_columns(), cols = b.num_columns();
  std::vector<double> out(rows * cols, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    auto x = a.column(i);
    for (std::size_t j = 0; j < cols; ++j) {
      auto y = b.column(j);
      double acc = 0.0;
      for (std::size_t t = 0; t < x.size(); ++t) {
        const double d = x[t] - y[t];
        acc += d * d;
      }
      out[i * cols + j] = acc;
    }
  }
  return out;
}

}  // namespace pit::kernels::serial
