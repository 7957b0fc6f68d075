// Command-line front end: single synthesis runs and benchmark grids.
//
// Exit codes: 0 solved, 1 no tree satisfies the specification, 2 invalid
// configuration or usage, 3 oracle search space over the cap, 4 environment
// fault, 5 timed out.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "CLI11.hpp"

#include "broccoli/bench.hpp"
#include "broccoli/errors.hpp"
#include "broccoli/report.hpp"

namespace {

using broccoli::RunConfig;

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("broccoli");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%H:%M:%S.%e] [%^%l%$] %v");
  spdlog::set_level(spdlog::level::warn);
  if (const char* level = std::getenv("BROCCOLI_LOG")) {
    spdlog::set_level(spdlog::level::from_str(level));
  }
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw broccoli::ConfigError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw broccoli::ConfigError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw broccoli::ConfigError("cannot write '" + path + "'");
  out << text;
}

int run_single(const RunConfig& config) {
  broccoli::RunHooks hooks;
  hooks.on_progress = [](const broccoli::SearchStats& s) {
    spdlog::info("{} trees evaluated, {} rejected early, {} skipped by symmetry, {} env steps",
                 s.trees_evaluated, s.trees_rejected_early, s.trees_skipped_symmetry, s.env_steps);
  };
  hooks.on_incumbent = [](const broccoli::DecisionTree& t, const broccoli::Outcome& o) {
    spdlog::debug("new incumbent: {} {} steps, size {}: {}", broccoli::to_string(o.verdict),
                  o.steps, o.size, broccoli::tree_to_string(t));
  };

  const broccoli::RunReport report = broccoli::run(config, hooks);
  const std::string json = broccoli::report_to_json(report).dump(2) + "\n";
  if (report.config.out.empty()) {
    std::cout << json;
  } else {
    write_text(report.config.out, json);
  }
  if (!report.config.trace_out.empty()) {
    std::ofstream out(report.config.trace_out);
    if (!out) throw broccoli::ConfigError("cannot write '" + report.config.trace_out + "'");
    broccoli::write_witness_traces(out, report);
  }

  std::cerr << broccoli::to_string(report.status);
  if (report.outcome) {
    std::cerr << ": " << broccoli::to_string(report.outcome->verdict) << " in "
              << report.outcome->steps << " steps, " << report.outcome->size
              << " predicate node(s), " << report.stats.trees_evaluated << " trees evaluated\n"
              << broccoli::pretty_tree(report);
  }
  std::cerr << '\n';
  return broccoli::exit_code(report);
}

int run_bench(const std::string& grid_path, const std::string& out_path) {
  const broccoli::BenchGrid grid = broccoli::bench_grid_from_json(load_json(grid_path));
  spdlog::info("bench: {} cells x {} repetitions", grid.cells.size(), grid.repetitions);
  const auto rows = broccoli::bench(grid);
  if (out_path.empty()) {
    broccoli::write_bench_csv(std::cout, rows);
  } else {
    std::ofstream out(out_path);
    if (!out) throw broccoli::ConfigError("cannot write '" + out_path + "'");
    broccoli::write_bench_csv(out, rows);
  }
  return broccoli::kExitSolved;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Synthesise optimal decision-tree policies for deterministic control environments"};
  RunConfig flags;
  std::string config_path;
  std::string bench_path;
  std::string mode;
  std::size_t max_nodes = 0;
  std::size_t grid_count = 0;
  std::vector<double> initial_state;

  app.add_option("--config", config_path, "JSON run configuration; flags override its fields");
  app.add_option("--env", flags.env, "cartpole | mountaincar | pendulum");
  app.add_option("--mode", mode, "min | max (default: the environment's objective)")
      ->check(CLI::IsMember({"min", "max"}));
  app.add_option("--depth", flags.depth, "maximum tree depth");
  app.add_option("--max-nodes", max_nodes, "maximum number of predicate nodes");
  auto* increments = app.add_option("--increments", flags.increments,
                                    "threshold increments per dimension")
                         ->delimiter(',');
  app.add_option("--grid-count", grid_count, "equally spaced thresholds per dimension")
      ->excludes(increments);
  app.add_option("--num-initial-states", flags.num_initial_states, "number of sampled initial states");
  app.add_option("--initial-state", initial_state, "explicit initial state (comma separated)")
      ->delimiter(',');
  app.add_option("--seed", flags.seed, "seed of the initial-state sampler");
  app.add_option("--step-bound", flags.step_bound, "step bound k of the specification");
  app.add_flag("--no-trace-pruning", flags.no_trace_pruning, "run the exhaustive oracle");
  app.add_flag("--no-early-stop", flags.no_early_stop, "never cut rollouts short");
  app.add_flag("--no-symmetry", flags.no_symmetry, "keep trees with identical subtrees");
  app.add_option("--oracle-cap", flags.oracle_cap, "largest search space the oracle accepts");
  app.add_option("--out", flags.out, "report (or bench CSV) output path; stdout if empty");
  app.add_option("--trace-out", flags.trace_out, "CSV of the best tree's witness traces");
  app.add_option("--bench", bench_path, "run a benchmark grid from this JSON file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return broccoli::kExitConfigError;
  }

  try {
    if (!bench_path.empty()) return run_bench(bench_path, flags.out);

    RunConfig config;
    if (!config_path.empty()) config = load_json(config_path).get<RunConfig>();
    const auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--env")) config.env = flags.env;
    if (given("--mode")) config.mode = broccoli::mode_from_string(mode);
    if (given("--depth")) config.depth = flags.depth;
    if (given("--max-nodes")) config.max_nodes = max_nodes;
    if (given("--increments")) {
      config.increments = flags.increments;
      config.grid_count.reset();
    }
    if (given("--grid-count")) {
      config.grid_count = grid_count;
      config.increments.clear();
    }
    if (given("--num-initial-states")) config.num_initial_states = flags.num_initial_states;
    if (given("--initial-state")) config.initial_states = {initial_state};
    if (given("--seed")) config.seed = flags.seed;
    if (given("--step-bound")) config.step_bound = flags.step_bound;
    if (given("--no-trace-pruning")) config.no_trace_pruning = true;
    if (given("--no-early-stop")) config.no_early_stop = true;
    if (given("--no-symmetry")) config.no_symmetry = true;
    if (given("--oracle-cap")) config.oracle_cap = flags.oracle_cap;
    if (given("--out")) config.out = flags.out;
    if (given("--trace-out")) config.trace_out = flags.trace_out;
    return run_single(config);
  } catch (const broccoli::OracleCapExceeded& e) {
    spdlog::error("{}", e.what());
    return broccoli::kExitOracleCap;
  } catch (const broccoli::EnvironmentFault& e) {
    spdlog::error("environment fault: {}", e.what());
    return broccoli::kExitEnvironmentFault;
  } catch (const broccoli::ConfigError& e) {
    spdlog::error("{}", e.what());
    return broccoli::kExitConfigError;
  } catch (const broccoli::UsageError& e) {
    spdlog::error("{}", e.what());
    return broccoli::kExitConfigError;
  }
}
