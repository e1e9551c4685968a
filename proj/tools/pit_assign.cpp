// pit-assign: solve, verify, benchmark and synthesize PIT assignment problems.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "pit/bench.hpp"
#include "pit/graphpit.hpp"
#include "pit/problem_io.hpp"
#include "pit/synth.hpp"
#include "pit/upit.hpp"
#include "pit/verify.hpp"

namespace {

constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("PIT_ASSIGN_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring malformed PIT_ASSIGN_SEED\n";
    }
  }
  return 0;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// "2-17", "2..17" or a single number.
std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  auto dash = text.find('-');
  if (dots != std::string::npos) {
    return {std::stoul(text.substr(0, dots)), std::stoul(text.substr(dots + 2))};
  }
  if (dash != std::string::npos) {
    return {std::stoul(text.substr(0, dash)), std::stoul(text.substr(dash + 1))};
  }
  const auto single = std::stoul(text);
  return {single, single};
}

struct SolveArgs {
  std::string problem;
  std::string algorithm = "dp";
  bool per_component = false;
  std::string out;
};

int cmd_solve(const SolveArgs& args) {
  const pit::Problem problem = pit::load_problem(args.problem);
  const int channels = problem.num_channels;
  const pit::OverlapGraph graph = pit::build_overlap_graph(problem.layout);

  pit::SolveResult result;
  const bool upit = args.algorithm == "hungarian" || args.algorithm == "upit-bf";
  if (upit) {
    if (problem.layout.size() != static_cast<std::size_t>(channels)) {
      throw pit::InvalidParams(args.algorithm + " needs as many utterances as channels");
    }
    std::optional<pit::LossDecomposition> f;
    pit::ScoreMatrix scores;
    if (problem.targets) {
      auto decomposition = pit::score_matrix_sa_sdr_dot(*problem.estimates, *problem.targets);
      scores = decomposition.scores;
      f = decomposition.f;
    } else {
      scores = *problem.scores;
    }
    result = args.algorithm == "hungarian" ? pit::solve_upit_hungarian(scores)
                                           : pit::solve_upit_brute_force(scores);
    if (f) result.loss = (*f)(result.score);
  } else {
    const auto algorithm = pit::parse_algorithm(args.algorithm);
    if (!algorithm) throw pit::InvalidParams("unknown algorithm '" + args.algorithm + "'");
    if (problem.targets) {
      result = pit::graphpit_loss(*problem.estimates, *problem.targets, problem.layout, channels,
                                  *algorithm, args.per_component);
    } else if (args.per_component) {
      result = pit::solve_per_component(*algorithm, *problem.scores, graph, channels);
    } else {
      result = pit::solve_graphpit(*algorithm, *problem.scores, graph, channels);
    }
  }

  const std::vector<int> colors = problem.to_file_order(result.assignment);
  std::cout << "algorithm: " << args.algorithm << (args.per_component ? " (per component)" : "")
            << "\nassignment:";
  for (int c : colors) std::cout << ' ' << c;
  std::cout.precision(12);
  std::cout << "\nscore: " << result.score << '\n';
  if (result.loss) std::cout << "loss_db: " << *result.loss << '\n';
  std::cout << "optimal: " << (result.optimal ? "true" : "false") << '\n'
            << "nodes: " << result.nodes << '\n';
  if (result.max_states > 0) std::cout << "max_states: " << result.max_states << '\n';

  if (!args.out.empty()) {
    nlohmann::json doc;
    doc["algorithm"] = args.algorithm;
    doc["per_component"] = args.per_component;
    doc["assignment"] = colors;
    doc["score"] = result.score;
    if (result.loss) doc["loss"] = *result.loss;
    doc["optimal"] = result.optimal;
    doc["nodes"] = result.nodes;
    doc["max_states"] = result.max_states;
    nlohmann::json edges = nlohmann::json::array();
    for (auto [u, v] : graph.edges()) edges.push_back({problem.order[u], problem.order[v]});
    doc["edges"] = std::move(edges);
    std::ofstream out(args.out);
    if (!out) throw pit::Error("cannot write " + args.out);
    out << doc.dump(2) << '\n';
  }
  return 0;
}

struct VerifyArgs {
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t max_utterances = 8;
  std::string channels = "2,3";
  std::string mutate;
};

int cmd_verify(const VerifyArgs& args) {
  pit::VerifyOptions options;
  options.trials = args.trials;
  options.seed = args.seed;
  options.max_utterances = args.max_utterances;
  options.channels.clear();
  for (const auto& c : split(args.channels, ',')) options.channels.push_back(std::stoi(c));
  if (args.mutate == "negate-scores") {
    options.negate_scores = true;
  } else if (!args.mutate.empty()) {
    throw pit::InvalidParams("unknown mutation '" + args.mutate + "'");
  }

  const pit::VerifyReport report = pit::run_verification(options);
  if (report.properties.empty()) std::cout << "no trials requested\n";
  for (const auto& p : report.properties) {
    std::cout << (p.ok() ? "PASS " : "FAIL ") << p.name << ": " << p.passed << "/"
              << p.passed + p.failed << " passed";
    if (p.max_error > 0.0) std::cout << ", max deviation " << p.max_error;
    if (!p.ok()) std::cout << " (first failure: " << p.first_failure << ")";
    std::cout << '\n';
  }
  return report.ok() ? 0 : kExitError;
}

struct BenchArgs {
  std::string algorithms = "score_matrix,unopt,bf,bnb,dfs,dp";
  std::string utterances = "2-17";
  int channels = 3;
  std::size_t reps = 50;
  std::size_t warmup = 1;
  std::uint64_t seed = 0;
  std::string out;
  bool gnuplot = false;
  std::vector<std::string> limits;
};

int cmd_bench(const BenchArgs& args) {
  pit::BenchOptions options;
  options.algorithms = split(args.algorithms, ',');
  std::tie(options.min_utterances, options.max_utterances) = parse_range(args.utterances);
  options.channels = args.channels;
  options.reps = args.reps;
  options.warmup = args.warmup;
  options.seed = args.seed;
  for (const auto& limit : args.limits) {
    const auto eq = limit.find('=');
    if (eq == std::string::npos) throw pit::InvalidParams("--limit expects name=U");
    options.max_utterances_per_algorithm[limit.substr(0, eq)] = std::stoul(limit.substr(eq + 1));
  }
  const auto rows = pit::run_benchmark(options);

  std::ofstream file;
  if (!args.out.empty()) {
    file.open(args.out);
    if (!file) throw pit::Error("cannot write " + args.out);
  }
  std::ostream& out = args.out.empty() ? std::cout : file;
  if (args.gnuplot) {
    pit::write_gnuplot(out, rows);
  } else {
    pit::write_csv(out, rows);
  }
  return 0;
}

struct SynthArgs {
  std::string layout = "chain";
  std::size_t utterances = 5;
  int channels = 2;
  std::uint64_t seed = 0;
  bool signals = false;
  int speakers = 5;
  double duration = 120.0;
  double sample_rate = 8000.0;
  std::string out;
};

int cmd_synth(const SynthArgs& args) {
  pit::Problem problem;
  problem.num_channels = args.channels;
  std::optional<pit::SignalMatrix> targets;
  if (args.layout == "chain") {
    problem.layout = pit::chain_layout(args.utterances, 2.0, 0.5, args.sample_rate);
  } else if (args.layout == "random") {
    problem.layout = pit::random_layout(args.utterances, 4000, args.channels,
                                        pit::derive_seed(args.seed, 1));
  } else if (args.layout == "meeting") {
    pit::SyntheticMeetingSpec spec;
    spec.num_speakers = args.speakers;
    spec.duration_seconds = args.duration;
    spec.sample_rate = args.sample_rate;
    spec.max_concurrency = args.channels;
    spec.seed = args.seed;
    auto meeting = args.signals ? pit::generate_meeting(spec) : pit::generate_meeting_layout(spec);
    problem.layout = std::move(meeting.layout);
    if (args.signals) targets = std::move(meeting.targets);
  } else {
    throw pit::InvalidParams("unknown layout '" + args.layout + "'");
  }
  problem.order.resize(problem.layout.size());
  std::iota(problem.order.begin(), problem.order.end(), std::size_t{0});

  if (args.signals) {
    if (!targets) targets = pit::noise_targets(problem.layout, pit::derive_seed(args.seed, 2));
    problem.estimates = pit::noise_signals(static_cast<std::size_t>(problem.layout.total_length()),
                                           static_cast<std::size_t>(args.channels),
                                           pit::derive_seed(args.seed, 3));
    problem.targets = std::move(targets);
  } else {
    problem.scores = pit::random_score_matrix(static_cast<std::size_t>(args.channels),
                                              problem.layout.size(), pit::derive_seed(args.seed, 4));
  }

  const std::string text = pit::serialize_problem(problem, true);
  if (args.out.empty()) {
    std::cout << text << '\n';
  } else {
    std::ofstream out(args.out);
    if (!out) throw pit::Error("cannot write " + args.out);
    out << text << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Assignment solvers for permutation-invariant training objectives"};
  app.require_subcommand(1);
  const std::uint64_t seed = default_seed();

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve a problem file");
  solve_cmd->add_option("problem", solve.problem, "Problem JSON file")->required();
  solve_cmd->add_option("-a,--algorithm", solve.algorithm,
                        "unopt, bf, dfs, bnb, dp, hungarian or upit-bf")
      ->capture_default_str();
  solve_cmd->add_flag("--per-component", solve.per_component,
                      "Solve each connected component separately");
  solve_cmd->add_option("-o,--out", solve.out, "Write the result as JSON");

  VerifyArgs verify;
  verify.seed = seed;
  auto* verify_cmd = app.add_subcommand("verify", "Run the randomized correctness suite");
  verify_cmd->add_option("-n,--trials", verify.trials, "Trials per property")->capture_default_str();
  verify_cmd->add_option("-s,--seed", verify.seed, "Base seed (default: $PIT_ASSIGN_SEED or 0)");
  verify_cmd->add_option("-u,--utterances", verify.max_utterances,
                         "Largest U for exhaustive suites")
      ->capture_default_str();
  verify_cmd->add_option("-c,--channels", verify.channels, "Comma-separated channel counts")
      ->capture_default_str();
  verify_cmd->add_option("--mutate", verify.mutate, "Inject a fault: negate-scores");

  BenchArgs bench;
  bench.seed = seed;
  auto* bench_cmd = app.add_subcommand("bench", "Time the assignment algorithms on chain layouts");
  bench_cmd->add_option("-a,--algorithm", bench.algorithms, "Comma-separated algorithms")
      ->capture_default_str();
  bench_cmd->add_option("-u,--utterances", bench.utterances, "Range of U, e.g. 2-17")
      ->capture_default_str();
  bench_cmd->add_option("-c,--channels", bench.channels, "Output channels")->capture_default_str();
  bench_cmd->add_option("-r,--reps", bench.reps, "Timed repetitions (500 to match long runs)")
      ->capture_default_str();
  bench_cmd->add_option("-w,--warmup", bench.warmup, "Untimed warmup runs")->capture_default_str();
  bench_cmd->add_option("-s,--seed", bench.seed, "Seed for the synthetic signals");
  bench_cmd->add_option("-o,--out", bench.out, "CSV output path (default: stdout)");
  bench_cmd->add_flag("--gnuplot", bench.gnuplot, "Write gnuplot data blocks instead of CSV");
  bench_cmd->add_option("--limit", bench.limits, "Cap U for one algorithm, e.g. unopt=12");

  SynthArgs synth;
  synth.seed = seed;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic problem file");
  synth_cmd->add_option("-l,--layout", synth.layout, "chain, random or meeting")->capture_default_str();
  synth_cmd->add_option("-u,--utterances", synth.utterances, "U for chain and random layouts")
      ->capture_default_str();
  synth_cmd->add_option("-c,--channels", synth.channels, "Output channels")->capture_default_str();
  synth_cmd->add_option("-s,--seed", synth.seed, "Seed");
  synth_cmd->add_flag("--signals", synth.signals,
                      "Write noise targets/estimates instead of a score matrix");
  synth_cmd->add_option("--speakers", synth.speakers, "Speakers in a meeting")->capture_default_str();
  synth_cmd->add_option("--duration", synth.duration, "Meeting length in seconds")
      ->capture_default_str();
  synth_cmd->add_option("--sample-rate", synth.sample_rate, "Samples per second")
      ->capture_default_str();
  synth_cmd->add_option("-o,--out", synth.out, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve_cmd) return cmd_solve(solve);
    if (*verify_cmd) return cmd_verify(verify);
    if (*bench_cmd) return cmd_bench(bench);
    if (*synth_cmd) return cmd_synth(synth);
  } catch (const pit::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
