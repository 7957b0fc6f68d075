#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "broccoli/environment.hpp"
#include "broccoli/outcome.hpp"
#include "broccoli/predicate.hpp"
#include "broccoli/tree.hpp"

namespace broccoli {

/// A node of the current skeleton, enumerated by the backtracking search.
///
/// Predicate slots walk dimensions in ascending order and thresholds in
/// ascending order within a dimension. `distance` is the smallest value of the
/// cursor dimension on which the current predicate held, over every rollout
/// since the predicate was assigned.
struct BacktrackingVariable {
  std::size_t index = 0;
  SlotKind kind = SlotKind::Action;

  std::size_t dimension = 0;
  std::optional<std::size_t> threshold_index;
  std::optional<std::size_t> action_index;
  std::optional<double> distance;

  bool assigned() const {
    return kind == SlotKind::Predicate ? threshold_index.has_value() : action_index.has_value();
  }
};

/// Advances a predicate slot to its next predicate. With trace pruning every
/// threshold not exceeding the distance value is skipped, and an undefined
/// distance abandons the rest of the dimension. Returns nullopt (and resets
/// the variable) once every dimension is exhausted.
std::optional<Predicate> next_predicate(BacktrackingVariable& var, const PredicateSpace& space,
                                        bool trace_pruning = true);

/// Folds a value on which the variable's predicate held into its distance.
void record_distance(BacktrackingVariable& var, double observed);

/// True iff some predicate node has structurally identical subtrees.
bool is_symmetric_redundant(const DecisionTree& tree);

struct SearchProblem {
  std::shared_ptr<const Environment> environment;
  std::shared_ptr<const Specification> specification;
  PredicateSpace predicates;
  std::vector<StateVector> initial_states;
  std::size_t depth_bound = 2;
  std::size_t node_budget = 3;
  Mode mode = Mode::Minimise;

  std::size_t step_bound() const { return specification->step_bound(); }
  /// Throws ConfigError on an inconsistent problem.
  void validate() const;
};

struct SearchStats {
  std::uint64_t trees_evaluated = 0;
  std::uint64_t trees_rejected_early = 0;
  std::uint64_t trees_skipped_symmetry = 0;
  std::uint64_t env_steps = 0;
  std::uint64_t shapes_visited = 0;
  std::uint64_t wall_millis = 0;

  friend bool operator==(const SearchStats&, const SearchStats&) = default;
};

struct SearchOptions {
  bool trace_pruning = true;
  bool early_stopping = true;
  bool symmetry_pruning = true;

  /// Refuse unpruned searches whose |P|^n * |A|^(n+1) exceeds this.
  long double oracle_cap = 1e9L;

  /// Abandon the search (status TimedOut) once this point is passed.
  std::optional<std::chrono::steady_clock::time_point> deadline;

  std::uint64_t progress_interval = 100'000;
  std::function<void(const SearchStats&)> on_progress;
  std::function<void(const DecisionTree&, const Outcome&)> on_incumbent;
  /// Called for every tree handed to the black box (after the symmetry filter).
  std::function<void(const DecisionTree&)> on_evaluate;

  /// Exhaustive baseline: no trace pruning, no early stopping, no symmetry.
  static SearchOptions oracle();
};

enum class SearchStatus { Solved, NoSolution, TimedOut };

struct SearchResult {
  SearchStatus status = SearchStatus::NoSolution;
  /// Best tree found; also set when no tree satisfies the specification.
  std::optional<DecisionTree> best_tree;
  std::optional<Outcome> outcome;
  SearchStats stats;
};

/// Per-predicate-slot minimum of the values on which the slot's predicate held
/// during the rollouts of one candidate. Indexed by slot; +inf means no visit.
using NodeDistances = std::vector<double>;

/// Runs `tree` from every initial state in order and returns its outcome, or
/// nullopt when the candidate was rejected because it cannot beat
/// `incumbent`. `distances` receives the visits to merge: those of every
/// rollout, or only of the last rollout on rejection.
std::optional<Outcome> evaluate_candidate(const SearchProblem& problem, const DecisionTree& tree,
                                          const std::optional<Outcome>& incumbent,
                                          bool early_stopping, NodeDistances& distances,
                                          SearchStats& stats);

/// |P|^n * |A|^(n+1) with n the node budget.
long double search_space_size(const SearchProblem& problem);

/// Smallest tree with optimal fitness over every shape within the budgets.
SearchResult synthesise(const SearchProblem& problem, const SearchOptions& options = {});

/// The same enumeration with trace pruning forced off; early stopping and
/// symmetry pruning only as set in `options`. Throws OracleCapExceeded when
/// the search space exceeds `options.oracle_cap`.
SearchResult synthesise_unpruned(const SearchProblem& problem,
                                 const SearchOptions& options = SearchOptions::oracle());

std::string_view to_string(SearchStatus s);

}  // namespace broccoli
