#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "broccoli/config.hpp"
#include "broccoli/search.hpp"

namespace broccoli {

/// Result of a single initial state under the reported tree.
struct StateResult {
  Verdict verdict = Verdict::Violated;
  std::size_t steps = 0;

  friend bool operator==(const StateResult&, const StateResult&) = default;
};

struct RunReport {
  RunConfig config;  // resolved
  SearchStatus status = SearchStatus::NoSolution;
  std::optional<DecisionTree> best_tree;
  std::optional<Outcome> outcome;
  SearchStats stats;
  std::vector<StateVector> initial_states;
  std::vector<StateResult> per_initial_state;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

/// Process exit codes of the command-line tool.
enum ExitCode : int {
  kExitSolved = 0,
  kExitNoSolution = 1,
  kExitConfigError = 2,
  kExitOracleCap = 3,
  kExitEnvironmentFault = 4,
  kExitTimedOut = 5,
};

struct RunHooks {
  std::function<void(const SearchStats&)> on_progress;
  std::function<void(const DecisionTree&, const Outcome&)> on_incumbent;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

/// Resolves `config`, runs the pruned search (or the exhaustive oracle when
/// trace pruning is disabled) and replays the best tree on every initial state.
RunReport run(const RunConfig& config, const RunHooks& hooks = {});

int exit_code(const RunReport& report);

nlohmann::json report_to_json(const RunReport& report);
RunReport report_from_json(const nlohmann::json& j);

/// The report's best tree rendered with the environment's dimension names.
std::string pretty_tree(const RunReport& report);

/// Witness traces of the best tree. With several initial states the rows get
/// a leading `initial_state` column.
void write_witness_traces(std::ostream& out, const RunReport& report);

}  // namespace broccoli
