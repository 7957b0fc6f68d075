#include "broccoli/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "broccoli/errors.hpp"

namespace broccoli {
namespace {

template <typename T>
std::vector<T> axis(const nlohmann::json& grid, const char* key) {
  if (!grid.contains(key)) return {};
  try {
    return grid.at(key).get<std::vector<T>>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("bench grid axis '") + key + "': " + e.what());
  }
}

// Runs `body` once per axis value, or once with no change if the axis is absent.
template <typename T, typename F>
void over(const std::vector<T>& values, F&& body) {
  if (values.empty()) {
    body(nullptr);
    return;
  }
  for (const T& v : values) body(&v);
}

std::string predicate_label(const RunConfig& c) {
  if (c.grid_count) return "X=" + std::to_string(*c.grid_count);
  std::ostringstream os;
  os << "inc=";
  for (std::size_t i = 0; i < c.increments.size(); ++i) {
    if (i) os << ';';
    os << c.increments[i];
  }
  return os.str();
}

}  // namespace

BenchGrid bench_grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("bench grid must be a JSON object");
  BenchGrid g;
  if (j.contains("repetitions")) g.repetitions = j.at("repetitions").get<std::size_t>();
  if (j.contains("cell-budget-seconds")) g.cell_budget_seconds = j.at("cell-budget-seconds").get<double>();
  if (g.repetitions < 1) throw ConfigError("repetitions must be at least 1");
  if (!(g.cell_budget_seconds > 0.0)) throw ConfigError("cell-budget-seconds must be positive");

  if (j.contains("cells")) {
    for (const auto& c : j.at("cells")) g.cells.push_back(c.get<RunConfig>());
  }
  if (j.contains("grid")) {
    const auto& grid = j.at("grid");
    const RunConfig base = j.contains("base") ? j.at("base").get<RunConfig>() : RunConfig{};
    const auto envs = axis<std::string>(grid, "env");
    const auto prune = axis<bool>(grid, "no-trace-pruning");
    const auto states = axis<std::size_t>(grid, "num-initial-states");
    const auto counts = axis<std::size_t>(grid, "grid-count");
    const auto nodes = axis<std::size_t>(grid, "max-nodes");
    over(envs, [&](const std::string* env) {
      over(prune, [&](const bool* no_prune) {
        over(states, [&](const std::size_t* n) {
          over(counts, [&](const std::size_t* x) {
            over(nodes, [&](const std::size_t* m) {
              RunConfig c = base;
              if (env) c.env = *env;
              if (no_prune) c.no_trace_pruning = *no_prune;
              if (n) c.num_initial_states = *n;
              if (x) {
                c.grid_count = *x;
                c.increments.clear();
              }
              if (m) c.max_nodes = *m;
              g.cells.push_back(c);
            });
          });
        });
      });
    });
  }
  if (g.cells.empty()) throw ConfigError("bench grid has no cells");
  return g;
}

std::vector<BenchRow> bench(const BenchGrid& grid) {
  std::vector<BenchRow> rows;
  for (std::size_t cell = 0; cell < grid.cells.size(); ++cell) {
    BenchRow row;
    row.cell = cell;
    row.config = resolve(grid.cells[cell]);

    const auto budget = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(grid.cell_budget_seconds));
    RunHooks hooks;
    hooks.deadline = std::chrono::steady_clock::now() + budget;

    std::vector<double> walls;
    double trees = 0.0;
    for (std::size_t rep = 0; rep < grid.repetitions; ++rep) {
      RunConfig c = row.config;
      c.seed = row.config.seed + rep;
      RunReport r;
      try {
        r = run(c, hooks);
      } catch (const OracleCapExceeded&) {
        row.refused = true;
        break;
      }
      if (r.status == SearchStatus::TimedOut) {
        row.timed_out = true;
        break;
      }
      walls.push_back(static_cast<double>(r.stats.wall_millis));
      trees += static_cast<double>(r.stats.trees_evaluated);
      if (r.outcome && (!row.best || compare_outcomes(*r.outcome, *row.best, *row.config.mode) ==
                                         Comparison::ABetter)) {
        row.best = r.outcome;
      }
    }

    row.completed = walls.size();
    if (!walls.empty()) {
      double sum = 0.0;
      for (double w : walls) sum += w;
      row.mean_wall_ms = sum / static_cast<double>(walls.size());
      row.mean_trees_evaluated = trees / static_cast<double>(walls.size());
      if (walls.size() > 1) {
        double sq = 0.0;
        for (double w : walls) sq += (w - row.mean_wall_ms) * (w - row.mean_wall_ms);
        row.stddev_wall_ms = std::sqrt(sq / static_cast<double>(walls.size() - 1));
      }
    }
    rows.push_back(row);
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << "cell,env,mode,trace_pruning,num_initial_states,predicates,depth,max_nodes,status,"
         "repetitions_completed,mean_wall_ms,stddev_wall_ms,mean_trees_evaluated,best_verdict,"
         "best_steps,best_tree_size\n";
  for (const BenchRow& r : rows) {
    const RunConfig& c = r.config;
    out << r.cell << ',' << c.env << ',' << to_string(*c.mode) << ','
        << (c.no_trace_pruning ? "off" : "on") << ',' << c.num_initial_states << ','
        << predicate_label(c) << ',' << c.depth << ',' << *c.max_nodes << ','
        << (r.refused ? "oracle_cap" : r.timed_out ? "timed_out" : "ok") << ',' << r.completed << ',' << r.mean_wall_ms << ','
        << r.stddev_wall_ms << ',' << r.mean_trees_evaluated << ',';
    if (r.best) {
      out << to_string(r.best->verdict) << ',' << r.best->steps << ',' << r.best->size;
    } else {
      out << ",,";
    }
    out << '\n';
  }
}

}  // namespace broccoli
