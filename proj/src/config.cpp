#include "broccoli/config.hpp"

#include <cmath>
#include <string>

#include "broccoli/errors.hpp"

namespace broccoli {
namespace {

const char* const kKnownKeys[] = {
    "env",        "mode",      "depth",         "max-nodes",        "increments",
    "grid-count", "num-initial-states", "initial-states", "seed", "step-bound",
    "no-trace-pruning", "no-early-stop", "no-symmetry", "oracle-cap", "out", "trace-out"};

template <typename T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

}  // namespace

void to_json(nlohmann::json& j, const RunConfig& c) {
  j = nlohmann::json{{"env", c.env},
                     {"depth", c.depth},
                     {"increments", c.increments},
                     {"num-initial-states", c.num_initial_states},
                     {"initial-states", c.initial_states},
                     {"seed", c.seed},
                     {"step-bound", c.step_bound},
                     {"no-trace-pruning", c.no_trace_pruning},
                     {"no-early-stop", c.no_early_stop},
                     {"no-symmetry", c.no_symmetry},
                     {"oracle-cap", c.oracle_cap},
                     {"out", c.out},
                     {"trace-out", c.trace_out}};
  j["mode"] = c.mode ? nlohmann::json(std::string(to_string(*c.mode))) : nlohmann::json();
  j["max-nodes"] = c.max_nodes ? nlohmann::json(*c.max_nodes) : nlohmann::json();
  j["grid-count"] = c.grid_count ? nlohmann::json(*c.grid_count) : nlohmann::json();
}

void from_json(const nlohmann::json& j, RunConfig& c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (const char* k : kKnownKeys) known = known || key == k;
    if (!known) throw ConfigError("unknown config field '" + key + "'");
  }
  read(j, "env", c.env);
  if (j.contains("mode") && !j["mode"].is_null()) {
    std::string m;
    read(j, "mode", m);
    c.mode = mode_from_string(m);
  }
  read(j, "depth", c.depth);
  if (j.contains("max-nodes") && !j["max-nodes"].is_null()) {
    std::size_t n = 0;
    read(j, "max-nodes", n);
    c.max_nodes = n;
  }
  read(j, "increments", c.increments);
  if (j.contains("grid-count") && !j["grid-count"].is_null()) {
    std::size_t x = 0;
    read(j, "grid-count", x);
    c.grid_count = x;
  }
  read(j, "num-initial-states", c.num_initial_states);
  read(j, "initial-states", c.initial_states);
  read(j, "seed", c.seed);
  read(j, "step-bound", c.step_bound);
  read(j, "no-trace-pruning", c.no_trace_pruning);
  read(j, "no-early-stop", c.no_early_stop);
  read(j, "no-symmetry", c.no_symmetry);
  read(j, "oracle-cap", c.oracle_cap);
  read(j, "out", c.out);
  read(j, "trace-out", c.trace_out);
}

std::vector<double> default_increments(std::string_view env) {
  if (env == "cartpole") return {0.1, 0.1, 0.1, 0.1};
  if (env == "mountaincar") return {0.05, 0.005};
  if (env == "pendulum") return {0.2, 0.2};
  throw ConfigError("unknown environment '" + std::string(env) + "'");
}

RunConfig resolve(const RunConfig& config) {
  RunConfig c = config;
  const Benchmark b = make_benchmark(c.env, c.step_bound);
  const std::size_t d = b.environment->dimension();

  if (!c.mode) c.mode = b.specification->objective();
  if (c.depth < 1) throw ConfigError("depth must be at least 1");
  if (c.depth > 16) throw ConfigError("depth must be at most 16");
  const std::size_t full = (std::size_t{1} << c.depth) - 1;
  if (!c.max_nodes) c.max_nodes = full;
  if (*c.max_nodes < 1) throw ConfigError("max-nodes must be at least 1");

  if (c.grid_count) {
    if (!c.increments.empty()) {
      throw ConfigError("increments and grid-count are mutually exclusive");
    }
    if (*c.grid_count < 1) throw ConfigError("grid-count must be at least 1");
  } else {
    if (c.increments.empty()) c.increments = default_increments(c.env);
    if (c.increments.size() == 1 && d > 1) c.increments.assign(d, c.increments.front());
    if (c.increments.size() != d) {
      throw ConfigError("increments: expected 1 or " + std::to_string(d) + " values for " + c.env +
                        ", got " + std::to_string(c.increments.size()));
    }
    for (double v : c.increments) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("increments must be positive");
    }
  }

  if (c.step_bound < 1) throw ConfigError("step-bound must be at least 1");
  if (!c.initial_states.empty()) {
    c.num_initial_states = c.initial_states.size();
    for (std::size_t i = 0; i < c.initial_states.size(); ++i) {
      const auto& s = c.initial_states[i];
      if (s.size() != d) {
        throw ConfigError("initial-states[" + std::to_string(i) + "]: expected " +
                          std::to_string(d) + " values for " + c.env + ", got " +
                          std::to_string(s.size()));
      }
      if (!b.environment->bounds().contains(StateVector(s))) {
        throw ConfigError("initial-states[" + std::to_string(i) + "] lies outside the state bounds");
      }
    }
  }
  if (c.num_initial_states < 1) throw ConfigError("num-initial-states must be at least 1");
  if (!(c.oracle_cap > 0.0)) throw ConfigError("oracle-cap must be positive");
  return c;
}

BuiltProblem build_problem(const RunConfig& resolved) {
  BuiltProblem built{make_benchmark(resolved.env, resolved.step_bound), {}};
  const Benchmark& b = built.benchmark;
  SearchProblem& p = built.problem;
  p.environment = b.environment;
  p.specification = b.specification;

  PredicateScheme scheme;
  if (resolved.grid_count) {
    scheme = GridScheme{std::vector<std::size_t>(b.environment->dimension(), *resolved.grid_count)};
  } else {
    scheme = IncrementScheme{resolved.increments, {}};
  }
  p.predicates = build_predicate_space(b.environment->bounds(), scheme);

  if (!resolved.initial_states.empty()) {
    for (const auto& s : resolved.initial_states) p.initial_states.emplace_back(s);
  } else {
    InitialStateSampler sampler(resolved.seed, b.initial_ranges);
    p.initial_states = sample_initial_states(sampler, resolved.num_initial_states);
  }
  p.depth_bound = resolved.depth;
  p.node_budget = resolved.max_nodes.value_or((std::size_t{1} << resolved.depth) - 1);
  p.mode = resolved.mode.value_or(b.specification->objective());
  return built;
}

SearchOptions search_options(const RunConfig& resolved) {
  SearchOptions o;
  o.trace_pruning = !resolved.no_trace_pruning;
  o.early_stopping = !resolved.no_early_stop;
  o.symmetry_pruning = !resolved.no_symmetry;
  o.oracle_cap = static_cast<long double>(resolved.oracle_cap);
  return o;
}

}  // namespace broccoli
