#include "broccoli/environment.hpp"

#include <iomanip>
#include <limits>

namespace broccoli {

std::vector<std::string> Environment::dimension_names() const {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < dimension(); ++i) names.push_back("s_" + std::to_string(i));
  return names;
}

Verdict Specification::classify(std::span<const StateVector> prefix) const {
  for (std::size_t i = 0; i < prefix.size(); ++i) {
    const Verdict v = classify_state(prefix[i], i);
    if (v != Verdict::Undetermined) return v;
  }
  return Verdict::Undetermined;
}

ReachSpecification::ReachSpecification(Goal goal, std::size_t step_bound)
    : Specification(step_bound), goal_(std::move(goal)) {}

Verdict ReachSpecification::classify_state(const StateVector& state, std::size_t step) const {
  if (goal_(state)) return Verdict::Satisfied;
  if (step >= step_bound()) return Verdict::Violated;
  return Verdict::Undetermined;
}

SafetySpecification::SafetySpecification(Safe safe, std::size_t step_bound)
    : Specification(step_bound), safe_(std::move(safe)) {}

Verdict SafetySpecification::classify_state(const StateVector& state, std::size_t step) const {
  if (!safe_(state)) return Verdict::Violated;
  if (step >= step_bound()) return Verdict::Satisfied;
  return Verdict::Undetermined;
}

Outcome outcome_of(const Trace& trace, Mode mode, std::size_t step_bound, std::size_t size) {
  if (trace.verdict == Verdict::Undetermined || !trace.decided_at) {
    throw UsageError("outcome of an undetermined trace");
  }
  Outcome o;
  o.verdict = trace.verdict;
  o.size = size;
  if (trace.verdict == Verdict::Violated && mode == Mode::Minimise) {
    o.steps = step_bound;
  } else {
    o.steps = *trace.decided_at;
  }
  return o;
}

Trace run_policy(const Environment& env, const Specification& spec, const DecisionTree& tree,
                 const StateVector& initial, std::size_t step_limit,
                 std::optional<std::size_t> early_stop_at) {
  if (step_limit > spec.step_bound()) {
    throw UsageError("step limit " + std::to_string(step_limit) + " exceeds the step bound " +
                     std::to_string(spec.step_bound()));
  }
  if (initial.size() != env.dimension()) {
    throw UsageError("initial state has dimension " + std::to_string(initial.size()) +
                     ", environment expects " + std::to_string(env.dimension()));
  }
  if (!env.bounds().contains(initial)) throw UsageError("initial state lies outside the bounds");
  if (!tree.complete()) throw UsageError("cannot run an incomplete tree");
  evaluate_tree(tree, initial);  // dimension check

  const std::size_t limit = early_stop_at ? std::min(step_limit, *early_stop_at) : step_limit;
  Trace trace;
  const auto end = detail::rollout(
      env, spec, initial, limit,
      [&](const StateVector& s) {
        const ActionId a = tree.decide(s);
        trace.actions.push_back(a);
        return a;
      },
      [&](const StateVector& s) { trace.states.push_back(s); });
  trace.verdict = end.verdict;
  if (end.verdict != Verdict::Undetermined) trace.decided_at = end.step;
  return trace;
}

void write_trace_csv(std::ostream& out, const Environment& env, const Trace& trace, bool header,
                     std::string_view prefix_column, std::string_view prefix_value) {
  if (header) {
    if (!prefix_column.empty()) out << prefix_column << ',';
    out << "step";
    for (std::size_t i = 0; i < env.dimension(); ++i) out << ",s_" << i;
    out << ",action,verdict\n";
  }
  const auto old_precision = out.precision(std::numeric_limits<double>::max_digits10);
  for (std::size_t i = 0; i < trace.states.size(); ++i) {
    if (!prefix_column.empty()) out << prefix_value << ',';
    out << i;
    for (double v : trace.states[i].values()) out << ',' << v;
    out << ',';
    if (i < trace.actions.size()) out << trace.actions[i].value;
    out << ',';
    if (trace.decided_at && *trace.decided_at == i) out << to_string(trace.verdict);
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace broccoli
