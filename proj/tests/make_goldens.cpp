// Regenerates the frozen golden files under tests/golden. Run only when the
// pinned dynamics constants or the sampler deliberately change.

#include <fstream>
#include <iostream>
#include <limits>

#include "broccoli/benchmarks.hpp"
#include "broccoli/sampler.hpp"
#include "test_support.hpp"

using namespace broccoli;

int main() {
  for (const auto name : benchmark_names()) {
    const Benchmark b = make_benchmark(name);
    const auto states = testing::golden_rollout(*b.environment, 100);
    std::ofstream out(testing::golden_path(std::string(name) + "_rollout.csv"));
    out.precision(std::numeric_limits<double>::max_digits10);
    out << "step";
    for (std::size_t i = 0; i < b.environment->dimension(); ++i) out << ",s_" << i;
    out << ",action\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      out << i;
      for (double v : states[i].values()) out << ',' << v;
      out << ',';
      if (i + 1 < states.size()) out << testing::golden_action(i).value;
      out << '\n';
    }
  }

  const Benchmark pend = make_benchmark("pendulum");
  InitialStateSampler sampler(9, pend.initial_ranges);
  std::ofstream out(testing::golden_path("pendulum_seed9_states.csv"));
  out.precision(std::numeric_limits<double>::max_digits10);
  out << "index,s_0,s_1\n";
  const auto states = sample_initial_states(sampler, 100);
  for (std::size_t i = 0; i < states.size(); ++i) {
    out << i << ',' << states[i][0] << ',' << states[i][1] << '\n';
  }
  std::cout << "goldens written to " << BROCCOLI_GOLDEN_DIR << '\n';
}
