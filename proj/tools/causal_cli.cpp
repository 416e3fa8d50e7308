// causal: run scenarios, fuzz the timestampers against the happened-before oracle,
// attack short-vector candidates, and generate scenario files.

#include "causal/commands.hpp"
#include "causal/error.hpp"
#include "causal/generators.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace causal;

namespace {

CommunicationGraph parse_graph(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw Error(Errc::ParseError, "graph must look like complete:4");
  const auto kind = text.substr(0, colon);
  std::size_t n = 0;
  try {
    n = std::stoul(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(Errc::ParseError, "bad process count in " + text);
  }
  if (kind == "complete") return CommunicationGraph::complete(n);
  if (kind == "star") return CommunicationGraph::star(n);
  if (kind == "cycle") return CommunicationGraph::cycle(n);
  if (kind == "path") return CommunicationGraph::path(n);
  throw Error(Errc::ParseError, "unknown graph family " + kind);
}

void emit(const Json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream file(out);
  if (!file) throw Error(Errc::FileNotFound, "cannot write " + out);
  file << j.dump(2) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Causality timestamping simulator and checker"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  bool timing = false;
  app.add_flag("--json", json, "Print the machine-readable report instead of the summary");
  app.add_flag("--timing", timing, "Include wall-clock time in reports");

  RunOptions run_opts;
  std::string run_algo = "inline";
  std::string run_cover;
  std::string run_out;
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  run_cmd->add_option("scenario", run_opts.scenario, "Scenario JSON")->required();
  run_cmd->add_option("--algo", run_algo, "vclock | inline | star")->capture_default_str();
  run_cmd->add_option("--cover", run_cover, "exact | greedy | comma-separated members");
  run_cmd->add_option("--out", run_out, "Write trace and logs as JSON");
  run_cmd->add_flag("--check-oracle", run_opts.check_oracle, "Compare every Ready pair with the oracle");

  FuzzOptions fuzz_opts;
  std::string fuzz_algo = "inline";
  std::string fuzz_cover = "exact";
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Random scenarios checked against the oracle");
  fuzz_cmd->add_option("--n", fuzz_opts.n, "Processes")->capture_default_str();
  fuzz_cmd->add_option("--events", fuzz_opts.events, "Maximum events per run")->capture_default_str();
  fuzz_cmd->add_option("--iters", fuzz_opts.iters, "Runs")->capture_default_str();
  fuzz_cmd->add_option("--seed", fuzz_opts.seed, "Seed of the first run")->capture_default_str();
  fuzz_cmd->add_option("--algo", fuzz_algo, "vclock | inline | star")->capture_default_str();
  fuzz_cmd->add_option("--edge-probability", fuzz_opts.edge_probability)->capture_default_str();
  fuzz_cmd->add_option("--max-delay", fuzz_opts.max_delay, "Largest delay; the grid step is 1/4")
      ->capture_default_str();
  fuzz_cmd->add_option("--cover", fuzz_cover, "exact | greedy")->capture_default_str();
  fuzz_cmd->add_option("--jobs", fuzz_opts.jobs, "Worker threads")->capture_default_str();

  std::size_t adv_n = 4;
  std::string adv_candidate = "truncated-vclock:2";
  auto* adv_cmd = app.add_subcommand("adversary", "Star construction against a short-vector candidate");
  adv_cmd->add_option("--n", adv_n, "Processes")->capture_default_str();
  adv_cmd->add_option("--candidate", adv_candidate, "truncated-vclock:<s> | lamport-scalar | zero")
      ->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen", "Write a generated scenario");
  gen_cmd->require_subcommand(1);
  std::string gen_out;

  RandomScenarioOptions rand_opts;
  std::string rand_cover = "exact";
  auto* gen_random = gen_cmd->add_subcommand("random", "Random connected graph");
  gen_random->add_option("--n", rand_opts.processes)->capture_default_str();
  gen_random->add_option("--events", rand_opts.max_events)->capture_default_str();
  gen_random->add_option("--seed", rand_opts.seed)->capture_default_str();
  gen_random->add_option("--edge-probability", rand_opts.edge_probability)->capture_default_str();
  gen_random->add_option("--send-probability", rand_opts.send_probability)->capture_default_str();
  gen_random->add_option("--max-delay", rand_opts.max_delay)->capture_default_str();
  gen_random->add_option("--cover", rand_cover, "exact | greedy")->capture_default_str();
  gen_random->add_flag("--star", rand_opts.star, "Use star(n)");

  std::size_t star_n = 4;
  ProcessId star_last = 3;
  auto* gen_star = gen_cmd->add_subcommand("star", "Concurrent radial sends, one delivered last");
  gen_star->add_option("--n", star_n)->capture_default_str();
  gen_star->add_option("--last", star_last, "Radial process delivered last")->capture_default_str();

  std::string flood_graph = "complete:4";
  ProcessId flood_slow = 3;
  std::string flood_delta = "1";
  std::string flood_horizon = "20";
  auto* gen_flood = gen_cmd->add_subcommand("flooding", "Every process floods; one process has slow channels");
  gen_flood->add_option("--graph", flood_graph, "complete:n | star:n | cycle:n | path:n")->capture_default_str();
  gen_flood->add_option("--slow", flood_slow)->capture_default_str();
  gen_flood->add_option("--fast-delay", flood_delta, "Rational")->capture_default_str();
  gen_flood->add_option("--horizon", flood_horizon, "Rational")->capture_default_str();

  for (auto* sub : {gen_random, gen_star, gen_flood}) sub->add_option("--out", gen_out, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      run_opts.algo = parse_algorithm(run_algo);
      if (!run_cover.empty()) run_opts.cover = run_cover;
      if (!run_out.empty()) run_opts.out = run_out;
      const auto report = cmd_run(run_opts);
      std::cout << (json ? to_json(report, timing).dump(2) + "\n" : summary(report, timing));
      return exit_code(report);
    }
    if (*fuzz_cmd) {
      fuzz_opts.algo = parse_algorithm(fuzz_algo);
      if (fuzz_cover == "exact") {
        fuzz_opts.cover = CoverSpec::Mode::exact;
      } else if (fuzz_cover == "greedy") {
        fuzz_opts.cover = CoverSpec::Mode::greedy;
      } else {
        throw Error(Errc::InvalidArgument, "--cover must be exact or greedy");
      }
      const auto report = cmd_fuzz(fuzz_opts);
      std::cout << (json ? to_json(report, timing).dump(2) + "\n" : summary(report, timing));
      return exit_code(report);
    }
    if (*adv_cmd) {
      const auto report = cmd_adversary(adv_n, adv_candidate);
      std::cout << (json ? to_json(report).dump(2) + "\n" : summary(report));
      return exit_code(report);
    }
    if (*gen_random) {
      rand_opts.cover.mode = rand_cover == "greedy" ? CoverSpec::Mode::greedy : CoverSpec::Mode::exact;
      emit(to_json(random_scenario(rand_opts)), gen_out);
    } else if (*gen_star) {
      emit(to_json(star_concurrent_scenario(star_n, {}, star_last)), gen_out);
    } else if (*gen_flood) {
      emit(to_json(flooding_scenario(parse_graph(flood_graph), flood_slow, parse_rational(flood_delta),
                                     parse_rational(flood_horizon))),
           gen_out);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
