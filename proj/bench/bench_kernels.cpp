// Serial reference kernels vs. the OpenMP versions on meeting-sized inputs.

#include <chrono>
#include <cstdio>
#include <functional>

#include "pit/kernels.hpp"
#include "pit/synth.hpp"

namespace {

double seconds(const std::function<void()>& fn, int reps) {
  fn();
  const auto start = std::chrono::steady_clock::now();
  for (int r = 0; r < reps; ++r) fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() / reps;
}

}  // namespace

int main() {
  namespace k = pit::kernels;
  std::printf("threads: %d\n", k::max_threads());
  std::printf("%-24s %8s %6s %12s %12s %8s\n", "kernel", "T", "N", "serial_s", "omp_s", "speedup");
  for (std::size_t samples : {32000u, 960000u}) {
    for (std::size_t n : {3u, 20u, 100u}) {
      if (samples * n > 50'000'000) continue;
      const pit::SignalMatrix a = pit::noise_signals(samples, n, 1);
      const pit::SignalMatrix b = pit::noise_signals(samples, n, 2);
      const int reps = samples * n > 10'000'000 ? 3 : 10;
      struct Case {
        const char* name;
        std::function<void()> serial, omp;
      } cases[] = {
          {"row_sum", [&] { k::serial::row_sum(a); }, [&] { k::row_sum(a); }},
          {"column_energies", [&] { k::serial::column_energies(a); }, [&] { k::column_energies(a); }},
          {"cross_dot", [&] { k::serial::cross_dot(a, b); }, [&] { k::cross_dot(a, b); }},
          {"cross_squared_distance", [&] { k::serial::cross_squared_distance(a, b); },
           [&] { k::cross_squared_distance(a, b); }},
      };
      for (const Case& c : cases) {
        const double s = seconds(c.serial, reps), o = seconds(c.omp, reps);
        std::printf("%-24s %8zu %6zu %12.6f %12.6f %8.2f\n", c.name, samples, n, s, o, s / o);
      }
    }
  }
}
