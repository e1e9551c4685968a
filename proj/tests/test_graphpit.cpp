#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "pit/graphpit.hpp"
#include "pit/losses.hpp"
#include "pit/synth.hpp"
#include "pit/upit.hpp"

using namespace pit;

namespace {

const Algorithm kExact[] = {Algorithm::kBruteForce, Algorithm::kBranchBound, Algorithm::kDp};

UtteranceLayout triangle() { return UtteranceLayout({{0, 3}, {1, 4}, {2, 5}}, 5); }

UtteranceLayout disjoint_pairs(std::size_t pairs) {
  std::vector<Interval> v;
  for (std::size_t k = 0; k < pairs; ++k) {
    const auto s = static_cast<std::int64_t>(3 * k);
    v.emplace_back(s, s + 2);
    v.emplace_back(s + 1, s + 3);
  }
  return UtteranceLayout(v, static_cast<std::int64_t>(3 * pairs));
}

}  // namespace

TEST_CASE("algorithm names") {
  for (auto a : {Algorithm::kUnoptimized, Algorithm::kBruteForce, Algorithm::kDfs,
                 Algorithm::kBranchBound, Algorithm::kDp}) {
    CHECK(parse_algorithm(to_string(a)) == a);
  }
  CHECK(parse_algorithm("bnb") == Algorithm::kBranchBound);
  CHECK_FALSE(parse_algorithm("greedy").has_value());
}

TEST_CASE("coloring enumeration") {
  const OverlapGraph path = OverlapGraph::from_edges(3, {{0, 1}, {1, 2}});
  CHECK(count_colorings(path, 2) == 2);
  std::vector<std::vector<int>> seen;
  for (const Assignment& a : enumerate_colorings(path, 2)) seen.push_back(a.colors());
  CHECK(seen == std::vector<std::vector<int>>{{0, 1, 0}, {1, 0, 1}});

  CHECK(count_colorings(OverlapGraph::from_edges(2, {}), 3) == 9);
  CHECK(count_colorings(OverlapGraph::from_edges(0, {}), 3) == 1);

  const OverlapGraph meeting = build_overlap_graph(fixtures::two_channel_meeting());
  CHECK(count_colorings(meeting, 2) == oracle::count_by_backtracking(meeting, 2));
  CHECK(count_colorings(meeting, 3) == oracle::count_by_backtracking(meeting, 3));

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const OverlapGraph g = build_overlap_graph(random_layout(7, 3000, 3, seed));
    std::vector<std::vector<int>> listed;
    for (const Assignment& a : enumerate_colorings(g, 3)) listed.push_back(a.colors());
    CHECK(listed == oracle::all_valid_colorings(g, 3));
  }
}

TEST_CASE("exact solvers match the enumeration oracle") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const int c = 2 + static_cast<int>(seed % 3);
    const std::size_t u = 1 + seed % 9;
    const auto layout = random_layout(u, 5000, c, seed);
    const OverlapGraph g = build_overlap_graph(layout);
    const ScoreMatrix m = random_score_matrix(static_cast<std::size_t>(c), u, seed + 1000);
    const double best = oracle::best_coloring_score(m, g, c);
    std::vector<Assignment> found;
    for (auto alg : kExact) {
      const SolveResult r = solve_graphpit(alg, m, g, c);
      CHECK(is_valid_coloring(g, r.assignment));
      CHECK(r.score == best);
      CHECK(r.score == trace_score(m, r.assignment));
      found.push_back(r.assignment);
    }
    CHECK(found[0] == found[1]);
    CHECK(found[0] == found[2]);
    CHECK(solve_graphpit_dp(m, layout, g, c).assignment == found[0]);

    const SolveResult greedy = solve_graphpit_dfs(m, g, c);
    CHECK_FALSE(greedy.optimal);
    CHECK(is_valid_coloring(g, greedy.assignment));
    CHECK(greedy.score >= best);
  }
}

TEST_CASE("greedy search") {
  const OverlapGraph path = OverlapGraph::from_edges(3, {{0, 1}, {1, 2}});
  const SolveResult easy = solve_graphpit_dfs(ScoreMatrix(2, 3, {0, 10, 0, 1, 0, 1}), path, 2);
  CHECK(easy.assignment.colors() == std::vector<int>{0, 1, 0});
  CHECK(easy.score == 0.0);

  // The cheapest first color forces an expensive second one.
  const ScoreMatrix trap(2, 3, {0, 0, 0, 1, 10, 1});
  const SolveResult greedy = solve_graphpit_dfs(trap, path, 2);
  CHECK(greedy.assignment.colors() == std::vector<int>{0, 1, 0});
  CHECK(greedy.score == 10.0);
  CHECK(solve_graphpit_branch_bound(trap, path, 2).score == 2.0);
}

TEST_CASE("too few channels") {
  const auto layout = triangle();
  const OverlapGraph g = build_overlap_graph(layout);
  CHECK(g.max_concurrency() == 3);
  const ScoreMatrix m = random_score_matrix(2, 3, 1);
  for (auto alg : {Algorithm::kBruteForce, Algorithm::kDfs, Algorithm::kBranchBound, Algorithm::kDp}) {
    CHECK_THROWS_AS(solve_graphpit(alg, m, g, 2), Infeasible);
    CHECK_THROWS_AS(solve_per_component(alg, m, g, 2), Infeasible);
  }
  CHECK_THROWS_AS(solve_graphpit_unoptimized(noise_signals(5, 2, 1), noise_targets(layout, 2), layout, 2),
                  Infeasible);

  // Without a known clique size the search itself has to find out.
  const OverlapGraph bare = OverlapGraph::from_edges(3, {{0, 1}, {0, 2}, {1, 2}});
  CHECK_THROWS_AS(solve_graphpit_brute_force(m, bare, 2), Infeasible);
  CHECK_THROWS_AS(solve_graphpit_branch_bound(m, bare, 2), Infeasible);
  CHECK_THROWS_AS(solve_graphpit_dfs(m, bare, 2), Infeasible);
}

TEST_CASE("branch and bound expands no more nodes than brute force") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto layout = chain_layout(8, 2.0, 0.5, 100.0);
    const OverlapGraph g = build_overlap_graph(layout);
    const ScoreMatrix m = random_score_matrix(3, 8, seed);
    CHECK(solve_graphpit_branch_bound(m, g, 3).nodes <= solve_graphpit_brute_force(m, g, 3).nodes);
  }
}

TEST_CASE("dynamic programming") {
  const UtteranceLayout single({{0, 4}}, 4);
  const SolveResult one = solve_graphpit_dp(ScoreMatrix(3, 1, {2, -1, -1}), single,
                                            build_overlap_graph(single), 3);
  CHECK(one.assignment.colors() == std::vector<int>{1});
  CHECK(one.score == -1.0);

  const auto chain = chain_layout(8, 2.0, 0.5, 100.0);
  const OverlapGraph g = build_overlap_graph(chain);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ScoreMatrix m = random_score_matrix(3, 8, seed);
    const SolveResult r = solve_graphpit_dp(m, chain, g, 3);
    CHECK(r.score == oracle::best_coloring_score(m, g, 3));
    CHECK(r.max_states <= 9);
    CHECK(r.max_extended_states >= r.max_states);
  }

  const OverlapGraph skip = OverlapGraph::from_edges(3, {{0, 2}});
  CHECK_THROWS_AS(solve_graphpit(Algorithm::kDp, random_score_matrix(2, 3, 1), skip, 2), InvalidParams);
  CHECK_THROWS_AS(solve_graphpit_dp(random_score_matrix(2, 8, 1), single, g, 2), DimensionMismatch);
}

TEST_CASE("dp state sets stay within C^(C-1)") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const int c = 2 + static_cast<int>(seed % 3);
    const std::size_t u = 4 + seed % 10;
    const auto layout = random_layout(u, 20000, c, seed);
    const OverlapGraph g = build_overlap_graph(layout);
    const SolveResult r = solve_graphpit_dp(random_score_matrix(static_cast<std::size_t>(c), u, seed), layout, g, c);
    std::size_t bound = 1;
    for (int i = 0; i + 1 < c; ++i) bound *= static_cast<std::size_t>(c);
    CHECK(r.max_states <= bound);
  }
}

TEST_CASE("per-component solving") {
  const auto meeting = fixtures::two_channel_meeting();
  const OverlapGraph g = build_overlap_graph(meeting);
  CHECK(connected_components(g).size() == 2);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ScoreMatrix m = random_score_matrix(2, 5, seed);
    for (auto alg : kExact) {
      const SolveResult whole = solve_graphpit(alg, m, g, 2);
      const SolveResult split = solve_per_component(alg, m, g, 2);
      CHECK(split.assignment == whole.assignment);
      CHECK(split.score == doctest::Approx(whole.score).epsilon(1e-14));
      CHECK(solve_per_component(alg, m, g, 2, true).assignment == whole.assignment);
    }
  }

  const auto pairs = disjoint_pairs(10);
  const OverlapGraph pg = build_overlap_graph(pairs);
  CHECK(connected_components(pg).size() == 10);
  const ScoreMatrix m = random_score_matrix(2, 20, 5);
  const SolveResult split = solve_per_component(Algorithm::kBruteForce, m, pg, 2);
  CHECK(split.score == doctest::Approx(oracle::best_coloring_score(m, pg, 2)).epsilon(1e-14));
  // 10 components of 2 nodes each instead of a 2^10-leaf tree.
  CHECK(split.nodes < solve_graphpit_brute_force(m, pg, 2).nodes);

  try {
    solve_per_component(Algorithm::kDp, random_score_matrix(2, 4, 1),
                        OverlapGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}}), 2);
    FAIL("expected Infeasible");
  } catch (const Infeasible& e) {
    CHECK(e.component() == 0);
  }
}

TEST_CASE("graph-pit loss") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto layout = random_layout(6, 1500, 2, seed);
    const SignalMatrix targets = noise_targets(layout, seed + 1);
    const SignalMatrix estimates = noise_signals(1500, 2, seed + 2);
    const SolveResult direct = graphpit_loss(estimates, targets, layout, 2, Algorithm::kUnoptimized);
    REQUIRE(direct.loss.has_value());
    for (auto alg : kExact) {
      const SolveResult r = graphpit_loss(estimates, targets, layout, 2, alg);
      REQUIRE(r.loss.has_value());
      CHECK(std::abs(*r.loss - *direct.loss) <= 1e-9);
      CHECK(std::abs(*r.loss - sa_sdr_loss(estimates, targets_from_assignment(targets, r.assignment))) <= 1e-9);
      CHECK(std::abs(*graphpit_loss(estimates, targets, layout, 2, alg, true).loss - *direct.loss) <= 1e-9);
    }
  }

  // Everyone overlaps with everyone: Graph-PIT reduces to uPIT.
  const UtteranceLayout all({{0, 50}, {5, 60}, {10, 70}}, 80);
  const SignalMatrix targets = noise_targets(all, 3), estimates = noise_signals(80, 3, 4);
  const SolveResult g = graphpit_loss(estimates, targets, all, 3, Algorithm::kDp);
  const SolveResult u = solve_upit(estimates, targets, DecompositionKind::kSaSdrDot);
  CHECK(*g.loss == doctest::Approx(*u.loss).epsilon(1e-12));
  CHECK(g.assignment == u.assignment);

  CHECK_THROWS_AS(graphpit_loss(estimates, targets, all, 2, Algorithm::kDp), DimensionMismatch);
}
