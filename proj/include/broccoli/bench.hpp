#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "broccoli/config.hpp"
#include "broccoli/report.hpp"

namespace broccoli {

/// A benchmark grid: explicit cells, or the cartesian product of the axes in
/// `grid` applied on top of `base`. Axes nest in the fixed order env,
/// no-trace-pruning, num-initial-states, grid-count, max-nodes (first slowest).
struct BenchGrid {
  std::vector<RunConfig> cells;
  std::size_t repetitions = 1;
  double cell_budget_seconds = 60.0;
};

BenchGrid bench_grid_from_json(const nlohmann::json& j);

struct BenchRow {
  std::size_t cell = 0;
  RunConfig config;
  bool timed_out = false;
  bool refused = false;       // unpruned cell over the oracle cap
  std::size_t completed = 0;  // repetitions that finished
  double mean_wall_ms = 0.0;
  double stddev_wall_ms = 0.0;
  double mean_trees_evaluated = 0.0;
  std::optional<Outcome> best;
};

/// Runs every cell sequentially, repetition r with seed `seed + r`. A cell
/// whose repetitions exceed the budget is marked timed out, and an unpruned
/// cell over the oracle cap is marked refused; the grid goes on either way.
std::vector<BenchRow> bench(const BenchGrid& grid);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

}  // namespace broccoli
