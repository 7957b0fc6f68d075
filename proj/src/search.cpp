#include "broccoli/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "broccoli/shapes.hpp"

namespace broccoli {

namespace {

constexpr double kUnvisited = std::numeric_limits<double>::infinity();

std::string describe_size(long double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

// Advances the cursor to the first non-empty dimension at or after `from`.
std::optional<Predicate> first_in_dimension_from(BacktrackingVariable& var,
                                                 const PredicateSpace& space, std::size_t from) {
  for (std::size_t d = from; d < space.dimension(); ++d) {
    if (!space.thresholds(d).empty()) {
      var.dimension = d;
      var.threshold_index = 0;
      var.distance.reset();
      return Predicate{d, space.thresholds(d).front()};
    }
  }
  var.dimension = 0;
  var.threshold_index.reset();
  var.distance.reset();
  return std::nullopt;
}

// The worse of two single-rollout outcomes: the multi-state fitness is the
// worst over all initial states.
Outcome worse_of(const Outcome& a, const Outcome& b, Mode mode) {
  return compare_fitness(a, b, mode) == Comparison::BBetter ? a : b;
}

class Engine {
 public:
  Engine(const SearchProblem& problem, const SearchOptions& options)
      : problem_(problem), options_(options), start_(std::chrono::steady_clock::now()) {}

  SearchResult run() {
    const auto shapes = enumerate_shapes(problem_.depth_bound, problem_.node_budget);
    for (const auto& shape : shapes) {
      ++stats_.shapes_visited;
      search_shape(shape);
      if (stop_ || timed_out_) break;
    }

    SearchResult result;
    stats_.wall_millis = static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                              start_)
            .count());
    result.stats = stats_;
    result.best_tree = best_tree_;
    result.outcome = best_;
    if (timed_out_) {
      result.status = SearchStatus::TimedOut;
    } else if (best_ && best_->verdict == Verdict::Satisfied) {
      result.status = SearchStatus::Solved;
    } else {
      result.status = SearchStatus::NoSolution;
    }
    return result;
  }

 private:
  void search_shape(const TreeShape& shape) {
    DecisionTree tree(shape);
    std::vector<BacktrackingVariable> vars;
    vars.reserve(shape.slot_count());
    for (std::size_t i = 0; i < shape.slot_count(); ++i) {
      BacktrackingVariable v;
      v.index = i;
      v.kind = shape.nodes()[i].kind;
      vars.push_back(v);
    }

    // Variables are visited in pre-order; the last one varies fastest.
    std::size_t i = 0;
    while (true) {
      if (advance(vars[i], tree)) {
        if (i + 1 == vars.size()) {
          consider(tree, vars);
          if (stop_ || timed_out_) return;
        } else {
          ++i;
        }
      } else {
        if (i == 0) return;
        --i;
      }
    }
  }

  bool advance(BacktrackingVariable& var, DecisionTree& tree) {
    if (var.kind == SlotKind::Action) {
      const auto actions = problem_.environment->actions();
      const std::size_t next = var.action_index ? *var.action_index + 1 : 0;
      if (next >= actions.size()) {
        var.action_index.reset();
        return false;
      }
      var.action_index = next;
      tree.assign(var.index, actions[next]);
      return true;
    }
    const auto p = next_predicate(var, problem_.predicates, options_.trace_pruning);
    if (!p) return false;
    tree.assign(var.index, *p);
    return true;
  }

  // Symmetry filter. A skipped tree contributes no visits, so every predicate
  // slot strictly inside a pair of identical subtrees falls back to the next
  // threshold: changing such a slot breaks the symmetry and yields a tree
  // whose trace was never observed.
  bool skip_symmetric(const DecisionTree& tree, std::vector<BacktrackingVariable>& vars) {
    const auto& nodes = tree.nodes();
    bool redundant = false;
    for (std::size_t p = 0; p < nodes.size(); ++p) {
      if (nodes[p].kind != SlotKind::Predicate) continue;
      const auto l = static_cast<std::size_t>(nodes[p].left);
      const auto r = static_cast<std::size_t>(nodes[p].right);
      if (!tree.subtrees_equal(l, r)) continue;
      redundant = true;
      const std::size_t end = tree.subtree_end(r);
      for (std::size_t j = l; j < end; ++j) {
        if (nodes[j].kind == SlotKind::Predicate) record_distance(vars[j], nodes[j].predicate.threshold);
      }
    }
    return redundant;
  }

  void consider(const DecisionTree& tree, std::vector<BacktrackingVariable>& vars) {
    if (options_.symmetry_pruning && skip_symmetric(tree, vars)) {
      ++stats_.trees_skipped_symmetry;
      return;
    }
    if (options_.on_evaluate) options_.on_evaluate(tree);

    ++stats_.trees_evaluated;
    const auto outcome =
        evaluate_candidate(problem_, tree, best_, options_.early_stopping, distances_, stats_);

    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (vars[j].kind == SlotKind::Predicate && distances_[j] != kUnvisited) {
        record_distance(vars[j], distances_[j]);
      }
    }

    if (!outcome) {
      ++stats_.trees_rejected_early;
    } else if (!best_ || compare_outcomes(*outcome, *best_, problem_.mode) == Comparison::ABetter) {
      best_ = outcome;
      best_tree_ = tree;
      if (options_.on_incumbent) options_.on_incumbent(tree, *outcome);
      if (cannot_be_beaten(*outcome)) stop_ = true;
    }

    if (options_.on_progress && options_.progress_interval > 0 &&
        stats_.trees_evaluated % options_.progress_interval == 0) {
      options_.on_progress(stats_);
    }
    if (options_.deadline && stats_.trees_evaluated % 64 == 0 &&
        std::chrono::steady_clock::now() > *options_.deadline) {
      timed_out_ = true;
    }
  }

  // Later trees are never smaller, so an outcome at the extreme step count
  // ends the search.
  bool cannot_be_beaten(const Outcome& o) const {
    if (o.verdict != Verdict::Satisfied) return false;
    return problem_.mode == Mode::Maximise ? o.steps >= problem_.step_bound() : o.steps == 0;
  }

  const SearchProblem& problem_;
  const SearchOptions& options_;
  std::chrono::steady_clock::time_point start_;

  std::optional<DecisionTree> best_tree_;
  std::optional<Outcome> best_;
  SearchStats stats_;
  NodeDistances distances_;
  bool stop_ = false;
  bool timed_out_ = false;
};

}  // namespace

OracleCapExceeded::OracleCapExceeded(long double size, long double cap)
    : ConfigError("unpruned search space |P|^n * |A|^(n+1) = " + describe_size(size) +
                  " exceeds the oracle cap of " + describe_size(cap)),
      size_(size),
      cap_(cap) {}

std::optional<Predicate> next_predicate(BacktrackingVariable& var, const PredicateSpace& space,
                                        bool trace_pruning) {
  if (var.kind != SlotKind::Predicate) throw UsageError("next_predicate on an action slot");
  if (!var.threshold_index) return first_in_dimension_from(var, space, 0);

  const auto& ts = space.thresholds(var.dimension);
  std::size_t next;
  if (!trace_pruning) {
    next = *var.threshold_index + 1;
  } else if (var.distance) {
    // Smallest threshold strictly above the distance value.
    next = static_cast<std::size_t>(std::upper_bound(ts.begin(), ts.end(), *var.distance) -
                                    ts.begin());
  } else {
    // The predicate never held, so no larger threshold in this dimension can.
    next = ts.size();
  }

  if (next < ts.size()) {
    var.threshold_index = next;
    var.distance.reset();
    return Predicate{var.dimension, ts[next]};
  }
  return first_in_dimension_from(var, space, var.dimension + 1);
}

void record_distance(BacktrackingVariable& var, double observed) {
  if (!var.distance || observed < *var.distance) var.distance = observed;
}

bool is_symmetric_redundant(const DecisionTree& tree) {
  const auto& nodes = tree.nodes();
  for (const TreeNode& n : nodes) {
    if (n.kind == SlotKind::Predicate &&
        tree.subtrees_equal(static_cast<std::size_t>(n.left), static_cast<std::size_t>(n.right))) {
      return true;
    }
  }
  return false;
}

void SearchProblem::validate() const {
  if (!environment) throw ConfigError("search problem has no environment");
  if (!specification) throw ConfigError("search problem has no specification");
  if (environment->actions().empty()) throw ConfigError("environment has an empty action set");
  if (predicates.dimension() != environment->dimension()) {
    throw ConfigError("predicate space has dimension " + std::to_string(predicates.dimension()) +
                      ", environment has " + std::to_string(environment->dimension()));
  }
  if (depth_bound < 1) throw ConfigError("depth bound must be at least 1");
  if (node_budget < 1) throw ConfigError("predicate-node budget must be at least 1");
  if (initial_states.empty()) throw ConfigError("at least one initial state is required");
  for (std::size_t i = 0; i < initial_states.size(); ++i) {
    const auto& s = initial_states[i];
    if (s.size() != environment->dimension()) {
      throw ConfigError("initial state " + std::to_string(i) + " has dimension " +
                        std::to_string(s.size()) + ", environment expects " +
                        std::to_string(environment->dimension()));
    }
    if (!environment->bounds().contains(s)) {
      throw ConfigError("initial state " + std::to_string(i) + " lies outside the state bounds");
    }
  }
}

SearchOptions SearchOptions::oracle() {
  SearchOptions o;
  o.trace_pruning = false;
  o.early_stopping = false;
  o.symmetry_pruning = false;
  return o;
}

std::optional<Outcome> evaluate_candidate(const SearchProblem& problem, const DecisionTree& tree,
                                          const std::optional<Outcome>& incumbent,
                                          bool early_stopping, NodeDistances& distances,
                                          SearchStats& stats) {
  const Environment& env = *problem.environment;
  const Specification& spec = *problem.specification;
  const std::size_t k = spec.step_bound();
  const Mode mode = problem.mode;
  const std::size_t size = tree.predicate_count();
  const auto& nodes = tree.nodes();

  distances.assign(nodes.size(), kUnvisited);
  std::vector<double> last(nodes.size(), kUnvisited);

  const bool compete = early_stopping && incumbent.has_value();
  std::size_t limit = k;
  if (compete && mode == Mode::Minimise && incumbent->verdict == Verdict::Satisfied) {
    if (incumbent->steps == 0) return std::nullopt;
    // Reaching the goal at the incumbent's step or later cannot win.
    limit = std::min(k, incumbent->steps - 1);
  }

  const auto choose = [&](const StateVector& s) {
    std::int32_t i = 0;
    while (nodes[i].kind == SlotKind::Predicate) {
      const TreeNode& n = nodes[i];
      const double v = s[n.predicate.dim];
      if (v >= n.predicate.threshold) {
        if (v < last[i]) last[i] = v;
        i = n.left;
      } else {
        i = n.right;
      }
    }
    return nodes[i].action;
  };

  std::optional<Outcome> worst;
  for (const StateVector& s0 : problem.initial_states) {
    std::fill(last.begin(), last.end(), kUnvisited);
    const auto end = detail::rollout(env, spec, s0, limit, choose, [](const StateVector&) {});
    stats.env_steps += end.step;

    if (end.verdict == Verdict::Undetermined) {
      distances = last;
      return std::nullopt;
    }
    Outcome o;
    o.verdict = end.verdict;
    o.steps = (end.verdict == Verdict::Violated && mode == Mode::Minimise) ? k : end.step;
    o.size = size;
    worst = worst ? worse_of(*worst, o, mode) : o;

    for (std::size_t j = 0; j < last.size(); ++j) distances[j] = std::min(distances[j], last[j]);

    if (compete && compare_outcomes(*worst, *incumbent, mode) != Comparison::ABetter) {
      distances = last;
      return std::nullopt;
    }
  }
  return worst;
}

long double search_space_size(const SearchProblem& problem) {
  std::size_t n = problem.node_budget;
  // A tree of depth D holds at most 2^D - 1 predicate nodes.
  if (problem.depth_bound < 63) {
    n = std::min<std::size_t>(n, (std::size_t{1} << problem.depth_bound) - 1);
  }
  const auto preds = static_cast<long double>(problem.predicates.size());
  const auto actions = static_cast<long double>(problem.environment->actions().size());
  return std::pow(preds, static_cast<long double>(n)) *
         std::pow(actions, static_cast<long double>(n + 1));
}

SearchResult synthesise(const SearchProblem& problem, const SearchOptions& options) {
  problem.validate();
  return Engine(problem, options).run();
}

SearchResult synthesise_unpruned(const SearchProblem& problem, const SearchOptions& options) {
  problem.validate();
  const long double size = search_space_size(problem);
  if (size > options.oracle_cap) throw OracleCapExceeded(size, options.oracle_cap);
  SearchOptions unpruned = options;
  unpruned.trace_pruning = false;
  return Engine(problem, unpruned).run();
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Solved: return "solved";
    case SearchStatus::NoSolution: return "no_solution";
    case SearchStatus::TimedOut: return "timed_out";
  }
  return "?";
}

}  // namespace broccoli
