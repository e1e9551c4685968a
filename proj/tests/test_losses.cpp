#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "pit/graphpit.hpp"
#include "pit/losses.hpp"
#include "pit/synth.hpp"

using namespace pit;

namespace {

std::vector<std::vector<int>> permutations(int n) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

TEST_CASE("sdr loss") {
  const std::vector<double> target{1, 0}, silent{0, 0};
  CHECK(sdr_loss(silent, target) == doctest::Approx(0.0));

  const std::vector<double> t4{1, 0, 0, 0}, e4{0.9, 0, 0, 0};
  CHECK(sdr_loss(e4, t4) == doctest::Approx(-20.0).epsilon(1e-12));
  CHECK(sdr_loss(t4, t4) == doctest::Approx(-100.0).epsilon(1e-12));
  CHECK_THROWS_AS(sdr_loss(t4, std::vector<double>(4, 0.0)), ZeroTargetEnergy);
  CHECK_THROWS_AS(sdr_loss(e4, target), DimensionMismatch);
}

TEST_CASE("averaged sdr") {
  // Per-channel target/error ratios 10 and 30.
  const double r = std::sqrt(0.1);
  const SignalMatrix targets(2, 2, {1.0, 0.0, std::sqrt(3.0), 0.0});
  const SignalMatrix estimates(2, 2, {1.0 - r, 0.0, std::sqrt(3.0) - r, 0.0});
  const double expected = -(10.0 * std::log10(10.0) + 10.0 * std::log10(30.0)) / 2.0;
  CHECK(a_sdr_loss(estimates, targets) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(std::round(a_sdr_loss(estimates, targets) * 1000.0) / 1000.0 == doctest::Approx(-12.386));

  const SignalMatrix one_t(3, 1, {1.0, 2.0, -1.0}), one_e(3, 1, {0.5, 2.0, 0.0});
  const SignalMatrix dup_t(3, 2, {1.0, 2.0, -1.0, 1.0, 2.0, -1.0});
  const SignalMatrix dup_e(3, 2, {0.5, 2.0, 0.0, 0.5, 2.0, 0.0});
  CHECK(a_sdr_loss(dup_e, dup_t) == doctest::Approx(sdr_loss(one_e.column(0), one_t.column(0))));

  const SignalMatrix rt = noise_signals(300, 3, 1), re = noise_signals(300, 3, 2);
  double mean = 0.0;
  for (std::size_t c = 0; c < 3; ++c) mean += oracle::sdr(oracle::column(re, c), oracle::column(rt, c));
  CHECK(a_sdr_loss(re, rt) == doctest::Approx(mean / 3.0).epsilon(1e-12));

  SignalMatrix silent = rt;
  for (double& x : silent.column(1)) x = 0.0;
  try {
    a_sdr_loss(re, silent);
    FAIL("expected ZeroTargetEnergy");
  } catch (const ZeroTargetEnergy& e) {
    CHECK(e.channel() == 1);
  }
}

TEST_CASE("source-aggregated sdr") {
  const double r = std::sqrt(0.1);
  const SignalMatrix targets(1, 2, {1.0, std::sqrt(3.0)});
  const SignalMatrix estimates(1, 2, {1.0 - r, std::sqrt(3.0) - r});
  CHECK(sa_sdr_loss(estimates, targets) ==
        doctest::Approx(-10.0 * std::log10(4.0 / 0.2)).epsilon(1e-12));
  CHECK(sa_sdr_loss(targets, targets) == doctest::Approx(-100.0));

  // Equal per-channel ratios: aggregated and averaged coincide; otherwise they differ.
  const SignalMatrix equal_t(1, 2, {1.0, 2.0}), equal_e(1, 2, {0.9, 1.8});
  CHECK(sa_sdr_loss(equal_e, equal_t) == doctest::Approx(a_sdr_loss(equal_e, equal_t)).epsilon(1e-12));
  CHECK(sa_sdr_loss(estimates, targets) != doctest::Approx(a_sdr_loss(estimates, targets)));

  CHECK_THROWS_AS(sa_sdr_loss(estimates, SignalMatrix(1, 2)), ZeroTargetEnergy);
}

TEST_CASE("targets from assignment") {
  const SignalMatrix s = noise_signals(20, 3, 4);
  const SignalMatrix same = targets_from_assignment(s, Assignment({0, 1, 2}, 3));
  CHECK(std::equal(same.data().begin(), same.data().end(), s.data().begin()));

  const auto layout = fixtures::two_channel_meeting();
  const SignalMatrix utterances = noise_targets(layout, 9);
  const SignalMatrix channels = targets_from_assignment(utterances, fixtures::two_channel_meeting_placement());
  for (std::size_t t = 0; t < 9; ++t) {
    CHECK(channels(t, 0) == doctest::Approx(utterances(t, 1) + utterances(t, 2) + utterances(t, 4)));
    CHECK(channels(t, 1) == doctest::Approx(utterances(t, 0) + utterances(t, 3)));
  }

  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t u = 1 + rng() % 6;
    const int c = 1 + static_cast<int>(rng() % 4);
    const SignalMatrix random = noise_signals(17, u, rng());
    std::vector<int> colors(u);
    for (int& x : colors) x = static_cast<int>(rng() % static_cast<std::uint64_t>(c));
    const Assignment a(colors, c);
    const SignalMatrix got = targets_from_assignment(random, a);
    const SignalMatrix want = oracle::matmul_assignment(random, a.to_dense(), c);
    for (std::size_t i = 0; i < got.data().size(); ++i) {
      CHECK(got.data()[i] == doctest::Approx(want.data()[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("pairwise sdr score matrix") {
  const SignalMatrix t = noise_signals(100, 2, 1);
  const Decomposition same = score_matrix_pairwise_sdr(t, t);
  CHECK(same.scores(0, 0) == doctest::Approx(-100.0));
  CHECK(same.scores(1, 1) == doctest::Approx(-100.0));
  CHECK(std::isfinite(same.scores(0, 1)));
  CHECK(same.scores(0, 1) > -100.0);

  const SignalMatrix targets = noise_signals(200, 4, 3), estimates = noise_signals(200, 4, 4);
  const Decomposition d = score_matrix_pairwise_sdr(estimates, targets);
  for (std::size_t c = 0; c < 4; ++c) {
    for (std::size_t u = 0; u < 4; ++u) {
      CHECK(d.scores(c, u) ==
            doctest::Approx(oracle::sdr(oracle::column(estimates, c), oracle::column(targets, u))).epsilon(1e-12));
    }
  }
  // f averages over channels: f(Tr(MP)) is the a-SDR of the permuted targets.
  for (const auto& p : permutations(4)) {
    const Assignment a(p, 4);
    CHECK(d.f(trace_score(d.scores, a)) ==
          doctest::Approx(a_sdr_loss(estimates, targets_from_assignment(targets, a))).epsilon(1e-12));
  }
}

TEST_CASE("mse score matrix") {
  const SignalMatrix targets(2, 2, {1, 0, 0, 1});
  const SignalMatrix estimates(2, 2, {0, 1, 1, 0});
  const Decomposition d = score_matrix_sa_sdr_mse(estimates, targets);
  CHECK(d.scores(0, 0) == 1.0);
  CHECK(d.scores(0, 1) == 0.0);
  CHECK(d.scores(1, 0) == 0.0);
  CHECK(d.scores(1, 1) == 1.0);
  CHECK(trace_score(d.scores, Assignment({1, 0}, 2)) == 0.0);
  CHECK(d.f(0.0) == doctest::Approx(-100.0));

  const Decomposition identical = score_matrix_sa_sdr_mse(targets, targets);
  CHECK(identical.f(trace_score(identical.scores, Assignment({0, 1}, 2))) == doctest::Approx(-100.0));

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const SignalMatrix t = noise_signals(150, 3, seed), e = noise_signals(150, 3, seed + 100);
    const Decomposition m = score_matrix_sa_sdr_mse(e, t);
    double best_trace = std::numeric_limits<double>::infinity();
    double best_direct = std::numeric_limits<double>::infinity();
    for (const auto& p : permutations(3)) {
      const Assignment a(p, 3);
      const double direct = sa_sdr_loss(e, targets_from_assignment(t, a));
      CHECK(m.f(trace_score(m.scores, a)) == doctest::Approx(direct).epsilon(1e-11));
      best_trace = std::min(best_trace, trace_score(m.scores, a));
      best_direct = std::min(best_direct, direct);
    }
    CHECK(std::abs(m.f(best_trace) - best_direct) <= 1e-9);
  }
  CHECK_THROWS_AS(score_matrix_sa_sdr_mse(noise_signals(5, 2, 1), noise_signals(5, 3, 1)),
                  DimensionMismatch);
}

TEST_CASE("dot-product score matrix") {
  const SignalMatrix t = noise_signals(300, 3, 8);
  const Decomposition same = score_matrix_sa_sdr_dot(t, t);
  CHECK(same.f(trace_score(same.scores, Assignment({0, 1, 2}, 3))) == doctest::Approx(-100.0));

  // Disjoint supports make estimates orthogonal to every target.
  SignalMatrix targets(4, 2), estimates(4, 2);
  targets(0, 0) = 1.0;
  targets(1, 1) = 2.0;
  estimates(2, 0) = 3.0;
  estimates(3, 1) = 1.0;
  const Decomposition orthogonal = score_matrix_sa_sdr_dot(estimates, targets);
  for (double m : orthogonal.scores.values()) CHECK(m == 0.0);
  CHECK(orthogonal.f(0.0) == doctest::Approx(-10.0 * std::log10(5.0 / 15.0)));

  // Graph-PIT: every valid coloring of U = 5 utterances on C = 3 channels.
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto layout = random_layout(5, 2000, 3, seed);
    const SignalMatrix s = noise_targets(layout, seed + 1);
    const SignalMatrix e = noise_signals(2000, 3, seed + 2);
    const Decomposition d = score_matrix_sa_sdr_dot(e, s);
    CHECK(d.scores.rows() == 3);
    CHECK(d.scores.cols() == 5);
    const OverlapGraph g = build_overlap_graph(layout);
    for (const auto& colors : oracle::all_valid_colorings(g, 3)) {
      const Assignment a(colors, 3);
      CHECK(std::abs(d.f(trace_score(d.scores, a)) - sa_sdr_loss(e, targets_from_assignment(s, a))) <= 1e-9);
    }
  }
}

TEST_CASE("wrapper functions increase strictly over reachable traces") {
  for (auto kind : {DecompositionKind::kASdrPairwise, DecompositionKind::kSaSdrMse,
                    DecompositionKind::kSaSdrDot}) {
    CAPTURE(to_string(kind));
    const SignalMatrix t = noise_signals(400, 4, 21), e = noise_signals(400, 4, 22);
    const Decomposition d = build_decomposition(kind, e, t);
    std::vector<double> traces;
    for (const auto& p : permutations(4)) traces.push_back(trace_score(d.scores, Assignment(p, 4)));
    std::sort(traces.begin(), traces.end());
    traces.erase(std::unique(traces.begin(), traces.end()), traces.end());
    for (std::size_t i = 1; i < traces.size(); ++i) CHECK(d.f(traces[i - 1]) < d.f(traces[i]));
  }
}

TEST_CASE("mse and dot decompositions pick equally good permutations") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SignalMatrix t = noise_signals(250, 4, seed), e = noise_signals(250, 4, seed + 50);
    const Decomposition mse = score_matrix_sa_sdr_mse(e, t);
    const Decomposition dot = score_matrix_sa_sdr_dot(e, t);
    Assignment best_mse, best_dot;
    double low_mse = std::numeric_limits<double>::infinity(), low_dot = low_mse;
    for (const auto& p : permutations(4)) {
      const Assignment a(p, 4);
      if (trace_score(mse.scores, a) < low_mse) {
        low_mse = trace_score(mse.scores, a);
        best_mse = a;
      }
      if (trace_score(dot.scores, a) < low_dot) {
        low_dot = trace_score(dot.scores, a);
        best_dot = a;
      }
    }
    CHECK(std::abs(mse.f(low_mse) - dot.f(low_dot)) <= 1e-9);
    CHECK(trace_score(mse.scores, best_dot) == doctest::Approx(low_mse).epsilon(1e-12));
  }
}

TEST_CASE("silent target columns are reported") {
  SignalMatrix t = noise_signals(10, 3, 1);
  for (double& x : t.column(2)) x = 0.0;
  const SignalMatrix e = noise_signals(10, 3, 2);
  for (auto kind : {DecompositionKind::kASdrPairwise, DecompositionKind::kSaSdrMse,
                    DecompositionKind::kSaSdrDot}) {
    try {
      build_decomposition(kind, e, t);
      FAIL("expected ZeroTargetEnergy");
    } catch (const ZeroTargetEnergy& err) {
      CHECK(err.channel() == 2);
    }
  }
}
