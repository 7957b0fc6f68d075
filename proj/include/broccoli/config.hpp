#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "broccoli/benchmarks.hpp"
#include "broccoli/outcome.hpp"
#include "broccoli/search.hpp"

namespace broccoli {

/// Everything needed to reproduce one synthesis run. JSON keys match the
/// command-line flag names (`max-nodes`, `no-trace-pruning`, ...).
struct RunConfig {
  std::string env = "mountaincar";
  std::optional<Mode> mode;  // defaults to the environment's objective
  std::size_t depth = 2;
  std::optional<std::size_t> max_nodes;  // defaults to 2^depth - 1
  std::vector<double> increments;        // one per dimension, or one for all
  std::optional<std::size_t> grid_count;
  std::size_t num_initial_states = 1;
  std::vector<std::vector<double>> initial_states;  // explicit states replace sampling
  std::uint64_t seed = 0;
  std::size_t step_bound = kDefaultStepBound;
  bool no_trace_pruning = false;
  bool no_early_stop = false;
  bool no_symmetry = false;
  double oracle_cap = 1e9;
  std::string out;
  std::string trace_out;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

void to_json(nlohmann::json& j, const RunConfig& c);
void from_json(const nlohmann::json& j, RunConfig& c);

/// Default per-dimension increments for a built-in environment.
std::vector<double> default_increments(std::string_view env);

/// Fills in every defaulted field (mode, max-nodes, increments) and checks the
/// result against the chosen environment. Throws ConfigError with a message
/// naming the offending field.
RunConfig resolve(const RunConfig& config);

/// The search problem described by a resolved config, plus the benchmark it
/// was built from.
struct BuiltProblem {
  Benchmark benchmark;
  SearchProblem problem;
};

BuiltProblem build_problem(const RunConfig& resolved);

SearchOptions search_options(const RunConfig& resolved);

}  // namespace broccoli
