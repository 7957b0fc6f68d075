#include "broccoli/report.hpp"

#include "broccoli/errors.hpp"

namespace broccoli {
namespace {

nlohmann::json outcome_to_json(const Outcome& o) {
  return {{"verdict", to_string(o.verdict)}, {"steps", o.steps}, {"tree_size", o.size}};
}

Outcome outcome_from_json(const nlohmann::json& j) {
  Outcome o;
  o.verdict = verdict_from_string(j.at("verdict").get<std::string>());
  o.steps = j.at("steps").get<std::size_t>();
  o.size = j.at("tree_size").get<std::size_t>();
  return o;
}

nlohmann::json stats_to_json(const SearchStats& s) {
  return {{"trees_evaluated", s.trees_evaluated},
          {"trees_rejected_early", s.trees_rejected_early},
          {"trees_skipped_symmetry", s.trees_skipped_symmetry},
          {"env_steps", s.env_steps},
          {"shapes_visited", s.shapes_visited},
          {"wall_millis", s.wall_millis}};
}

SearchStats stats_from_json(const nlohmann::json& j) {
  SearchStats s;
  s.trees_evaluated = j.at("trees_evaluated").get<std::uint64_t>();
  s.trees_rejected_early = j.at("trees_rejected_early").get<std::uint64_t>();
  s.trees_skipped_symmetry = j.at("trees_skipped_symmetry").get<std::uint64_t>();
  s.env_steps = j.at("env_steps").get<std::uint64_t>();
  s.shapes_visited = j.at("shapes_visited").get<std::uint64_t>();
  s.wall_millis = j.at("wall_millis").get<std::uint64_t>();
  return s;
}

SearchStatus status_from_string(const std::string& s) {
  for (auto st : {SearchStatus::Solved, SearchStatus::NoSolution, SearchStatus::TimedOut}) {
    if (to_string(st) == s) return st;
  }
  throw ConfigError("unknown status '" + s + "'");
}

}  // namespace

RunReport run(const RunConfig& config, const RunHooks& hooks) {
  RunReport report;
  report.config = resolve(config);
  const BuiltProblem built = build_problem(report.config);
  const SearchProblem& problem = built.problem;

  SearchOptions options = search_options(report.config);
  options.on_progress = hooks.on_progress;
  options.on_incumbent = hooks.on_incumbent;
  options.deadline = hooks.deadline;

  const SearchResult result = report.config.no_trace_pruning
                                  ? synthesise_unpruned(problem, options)
                                  : synthesise(problem, options);
  report.status = result.status;
  report.best_tree = result.best_tree;
  report.outcome = result.outcome;
  report.stats = result.stats;
  report.initial_states = problem.initial_states;

  if (report.best_tree) {
    const auto& env = *problem.environment;
    const auto& spec = *problem.specification;
    for (const auto& s0 : problem.initial_states) {
      const Trace t = run_policy(env, spec, *report.best_tree, s0, spec.step_bound());
      const Outcome o = outcome_of(t, problem.mode, spec.step_bound(), 0);
      report.per_initial_state.push_back({o.verdict, o.steps});
    }
  }
  return report;
}

int exit_code(const RunReport& report) {
  switch (report.status) {
    case SearchStatus::Solved: return kExitSolved;
    case SearchStatus::NoSolution: return kExitNoSolution;
    case SearchStatus::TimedOut: return kExitTimedOut;
  }
  return kExitNoSolution;
}

nlohmann::json report_to_json(const RunReport& r) {
  nlohmann::json j;
  j["config"] = r.config;
  j["status"] = to_string(r.status);
  j["best_tree"] = r.best_tree ? tree_to_json(*r.best_tree) : nlohmann::json();
  j["tree_text"] = r.best_tree ? pretty_tree(r) : "";
  j["outcome"] = r.outcome ? outcome_to_json(*r.outcome) : nlohmann::json();
  j["stats"] = stats_to_json(r.stats);
  nlohmann::json states = nlohmann::json::array();
  for (const auto& s : r.initial_states) {
    states.push_back(std::vector<double>(s.values().begin(), s.values().end()));
  }
  j["initial_states"] = states;
  nlohmann::json per = nlohmann::json::array();
  for (const auto& p : r.per_initial_state) {
    per.push_back({{"verdict", to_string(p.verdict)}, {"steps", p.steps}});
  }
  j["per_initial_state"] = per;
  return j;
}

RunReport report_from_json(const nlohmann::json& j) {
  RunReport r;
  r.config = j.at("config").get<RunConfig>();
  r.status = status_from_string(j.at("status").get<std::string>());
  if (!j.at("best_tree").is_null()) r.best_tree = tree_from_json(j.at("best_tree"));
  if (!j.at("outcome").is_null()) r.outcome = outcome_from_json(j.at("outcome"));
  r.stats = stats_from_json(j.at("stats"));
  for (const auto& s : j.at("initial_states")) r.initial_states.emplace_back(s.get<std::vector<double>>());
  for (const auto& p : j.at("per_initial_state")) {
    r.per_initial_state.push_back(
        {verdict_from_string(p.at("verdict").get<std::string>()), p.at("steps").get<std::size_t>()});
  }
  return r;
}

std::string pretty_tree(const RunReport& report) {
  if (!report.best_tree) return "";
  const Benchmark b = make_benchmark(report.config.env, report.config.step_bound);
  return tree_to_string(*report.best_tree, b.environment->dimension_names());
}

void write_witness_traces(std::ostream& out, const RunReport& report) {
  if (!report.best_tree) return;
  const Benchmark b = make_benchmark(report.config.env, report.config.step_bound);
  const auto& spec = *b.specification;
  for (std::size_t i = 0; i < report.initial_states.size(); ++i) {
    const Trace t =
        run_policy(*b.environment, spec, *report.best_tree, report.initial_states[i], spec.step_bound());
    if (report.initial_states.size() == 1) {
      write_trace_csv(out, *b.environment, t);
    } else {
      write_trace_csv(out, *b.environment, t, i == 0, "initial_state", std::to_string(i));
    }
  }
}

}  // namespace broccoli
