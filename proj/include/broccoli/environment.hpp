#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "broccoli/errors.hpp"
#include "broccoli/outcome.hpp"
#include "broccoli/state.hpp"
#include "broccoli/tree.hpp"

namespace broccoli {

/// Deterministic black-box dynamics E(S, a) -> S'.
///
/// Implementations must be pure: the same (state, action) pair yields a
/// bit-identical successor on every call.
class Environment {
 public:
  virtual ~Environment() = default;

  virtual std::string_view name() const = 0;
  virtual const StateBounds& bounds() const = 0;
  virtual std::span<const ActionId> actions() const = 0;
  virtual StateVector step(const StateVector& state, ActionId action) const = 0;

  /// Human-readable dimension names, used for printing trees and CSV headers.
  virtual std::vector<std::string> dimension_names() const;

  std::size_t dimension() const { return bounds().dimension(); }
};

/// Bounded-time, prefix-closed trace classifier with step bound k.
///
/// `classify_state` sees one state at a time together with its index in the
/// trace; a prefix's verdict is the first non-Undetermined answer along it.
/// At index k the answer must not be Undetermined.
class Specification {
 public:
  explicit Specification(std::size_t step_bound) : step_bound_(step_bound) {}
  virtual ~Specification() = default;

  std::size_t step_bound() const { return step_bound_; }

  /// Direction in which the trace length is optimised.
  virtual Mode objective() const = 0;
  virtual Verdict classify_state(const StateVector& state, std::size_t step) const = 0;

  /// Verdict of the prefix S_0..S_{n-1}.
  Verdict classify(std::span<const StateVector> prefix) const;

 private:
  std::size_t step_bound_;
};

/// Satisfied as soon as a goal state is reached; Violated at the step bound.
class ReachSpecification final : public Specification {
 public:
  using Goal = std::function<bool(const StateVector&)>;

  ReachSpecification(Goal goal, std::size_t step_bound);

  Mode objective() const override { return Mode::Minimise; }
  Verdict classify_state(const StateVector& state, std::size_t step) const override;

 private:
  Goal goal_;
};

/// Violated as soon as an unsafe state is reached; Satisfied at the step bound.
class SafetySpecification final : public Specification {
 public:
  using Safe = std::function<bool(const StateVector&)>;

  SafetySpecification(Safe safe, std::size_t step_bound);

  Mode objective() const override { return Mode::Maximise; }
  Verdict classify_state(const StateVector& state, std::size_t step) const override;

 private:
  Safe safe_;
};

/// Witness trace: states S_0..S_n, actions a_0..a_{n-1}.
struct Trace {
  std::vector<StateVector> states;
  std::vector<ActionId> actions;
  Verdict verdict = Verdict::Undetermined;
  /// Index of the state that fixed the verdict; unset when Undetermined.
  std::optional<std::size_t> decided_at;

  std::size_t steps() const { return actions.size(); }
};

/// Outcome of a single decided trace under `mode` for a tree of `size` nodes.
Outcome outcome_of(const Trace& trace, Mode mode, std::size_t step_bound, std::size_t size);

/// Rolls `tree` out from `initial` until the specification decides, until
/// `step_limit` actions have been taken, or until `early_stop_at` actions have
/// been taken (Undetermined). Throws EnvironmentFault on a non-finite state
/// and UsageError if `step_limit` exceeds the step bound or the initial state
/// is out of bounds.
Trace run_policy(const Environment& env, const Specification& spec, const DecisionTree& tree,
                 const StateVector& initial, std::size_t step_limit,
                 std::optional<std::size_t> early_stop_at = std::nullopt);

/// CSV with header `step,s_0,...,s_{d-1},action,verdict`. The action column is
/// empty on the final state; the verdict column is filled on the row that
/// decided the trace.
void write_trace_csv(std::ostream& out, const Environment& env, const Trace& trace,
                     bool header = true, std::string_view prefix_column = {},
                     std::string_view prefix_value = {});

namespace detail {

struct RolloutEnd {
  Verdict verdict;
  std::size_t step;
};

/// The rollout loop shared by run_policy and the search engine.
template <typename ChooseAction, typename OnState>
RolloutEnd rollout(const Environment& env, const Specification& spec, StateVector state,
                   std::size_t step_limit, ChooseAction&& choose, OnState&& on_state) {
  for (std::size_t i = 0;; ++i) {
    on_state(state);
    const Verdict v = spec.classify_state(state, i);
    if (v != Verdict::Undetermined) return {v, i};
    if (i >= step_limit) return {Verdict::Undetermined, i};
    const ActionId a = choose(state);
    state = env.step(state, a);
    if (!state.all_finite()) {
      throw EnvironmentFault(std::string(env.name()) + ": non-finite state after step " +
                             std::to_string(i + 1));
    }
  }
}

}  // namespace detail
}  // namespace broccoli
