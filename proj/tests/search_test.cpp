#include <gtest/gtest.h>

#include <limits>
#include <map>
#include <random>

#include "broccoli/benchmarks.hpp"
#include "broccoli/errors.hpp"
#include "broccoli/search.hpp"
#include "broccoli/shapes.hpp"
#include "test_support.hpp"

using namespace broccoli;
using broccoli::testing::ConstantEnv;
using broccoli::testing::LineEnv;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

DecisionTree L(int a) { return DecisionTree::leaf(ActionId{a}); }

BacktrackingVariable predicate_slot() {
  BacktrackingVariable v;
  v.kind = SlotKind::Predicate;
  return v;
}

std::vector<std::string> shape_strings(const std::vector<TreeShape>& shapes) {
  std::vector<std::string> out;
  for (const auto& s : shapes) out.push_back(s.to_string());
  return out;
}

// Skeletons with exactly n predicate nodes and depth <= h.
std::uint64_t count_shapes(std::size_t n, std::size_t h) {
  if (n == 0) return 1;
  if (h == 0) return 0;
  std::uint64_t total = 0;
  for (std::size_t l = 0; l < n; ++l) total += count_shapes(l, h - 1) * count_shapes(n - 1 - l, h - 1);
  return total;
}

PredicateSpace one_dim_space(std::vector<double> thresholds, Interval bounds = {0.0, 3.0}) {
  return PredicateSpace(StateBounds({bounds}), {std::move(thresholds)});
}

// The state 2.3 lies above thresholds 1 and 2; the goal is unreachable.
SearchProblem constant_problem(std::size_t k = 5) {
  SearchProblem p{std::make_shared<ConstantEnv>(),
                  std::make_shared<ReachSpecification>([](const StateVector&) { return false; }, k),
                  one_dim_space({1.0, 2.0, 3.0}),
                  {StateVector{2.3}}};
  p.depth_bound = 1;
  p.node_budget = 1;
  return p;
}

SearchProblem line_problem(std::vector<StateVector> states, std::size_t k = 100) {
  SearchProblem p{std::make_shared<LineEnv>(),
                  std::make_shared<ReachSpecification>(
                      [](const StateVector& s) { return s[0] >= 10.0; }, k),
                  one_dim_space({-2.0, 0.0, 2.0, 3.0, 5.0}, {-100.0, 100.0}),
                  std::move(states)};
  return p;
}

}  // namespace

TEST(Shapes, DepthOneBudgetOne) {
  EXPECT_EQ(shape_strings(enumerate_shapes(1, 1)), (std::vector<std::string>{"A", "P(A,A)"}));
}

TEST(Shapes, DepthTwoBudgetThreeOrder) {
  EXPECT_EQ(shape_strings(enumerate_shapes(2, 3)),
            (std::vector<std::string>{"A", "P(A,A)", "P(P(A,A),A)", "P(A,P(A,A))",
                                      "P(P(A,A),P(A,A))"}));
}

TEST(Shapes, DepthThreeBudgetSixCountsPerSize) {
  const auto shapes = enumerate_shapes(3, 6);
  std::map<std::size_t, std::uint64_t> per_size;
  std::size_t previous = 0;
  for (const auto& s : shapes) {
    ASSERT_GE(s.predicate_count(), previous);
    ASSERT_LE(s.depth(), 3u);
    previous = s.predicate_count();
    ++per_size[s.predicate_count()];
  }
  const std::map<std::size_t, std::uint64_t> golden{{0, 1}, {1, 1}, {2, 2}, {3, 5},
                                                    {4, 6}, {5, 6}, {6, 4}};
  EXPECT_EQ(per_size, golden);
  for (const auto& [n, c] : per_size) EXPECT_EQ(c, count_shapes(n, 3)) << n;
  EXPECT_EQ(shapes_of_size(7, 3).size(), 1u);
}

TEST(Shapes, NoDuplicates) {
  const auto names = shape_strings(enumerate_shapes(4, 8));
  std::set<std::string> unique(names.begin(), names.end());
  EXPECT_EQ(unique.size(), names.size());
  EXPECT_EQ(names.size(), [] {
    std::uint64_t total = 0;
    for (std::size_t n = 0; n <= 8; ++n) total += count_shapes(n, 4);
    return total;
  }());
}

TEST(NextPredicate, FreshVariableTakesTheFirstThreshold) {
  const PredicateSpace space(StateBounds({{0.0, 3.0}, {0.0, 3.0}}), {{1.0, 2.0, 3.0}, {1.0, 2.0}});
  auto var = predicate_slot();
  EXPECT_EQ(next_predicate(var, space), (Predicate{0, 1.0}));
}

TEST(NextPredicate, JumpsPastTheDistance) {
  const PredicateSpace space(StateBounds({{0.0, 3.0}, {0.0, 3.0}}), {{1.0, 2.0, 3.0}, {1.0, 2.0}});
  auto var = predicate_slot();
  next_predicate(var, space);
  record_distance(var, 2.3);
  EXPECT_EQ(next_predicate(var, space), (Predicate{0, 3.0}));
  EXPECT_FALSE(var.distance.has_value());
}

TEST(NextPredicate, EqualDistanceIsPruned) {
  const PredicateSpace space(StateBounds({{0.0, 3.0}}), {{1.0, 2.0, 3.0}});
  auto var = predicate_slot();
  next_predicate(var, space);
  record_distance(var, 2.0);
  EXPECT_EQ(next_predicate(var, space), (Predicate{0, 3.0}));
}

TEST(NextPredicate, UndefinedDistanceAbandonsTheDimension) {
  const PredicateSpace space(StateBounds({{0.0, 3.0}, {0.0, 3.0}}), {{1.0, 2.0, 3.0}, {1.0, 2.0}});
  auto var = predicate_slot();
  next_predicate(var, space);
  EXPECT_EQ(next_predicate(var, space), (Predicate{1, 1.0}));
  record_distance(var, 2.5);
  EXPECT_FALSE(next_predicate(var, space).has_value());
  EXPECT_FALSE(var.assigned());
  EXPECT_EQ(next_predicate(var, space), (Predicate{0, 1.0}));  // restarts after a reset
}

TEST(NextPredicate, EmptyDimensionsAreSkipped) {
  const PredicateSpace space(StateBounds({{0.0, 3.0}, {0.0, 3.0}}), {{}, {2.0}});
  auto var = predicate_slot();
  EXPECT_EQ(next_predicate(var, space), (Predicate{1, 2.0}));
  EXPECT_FALSE(next_predicate(var, space).has_value());
}

TEST(NextPredicate, WithoutPruningEveryThresholdIsVisitedInOrder) {
  const PredicateSpace space(StateBounds({{0.0, 3.0}, {0.0, 3.0}}), {{1.0, 2.0, 3.0}, {1.0, 2.0}});
  auto var = predicate_slot();
  std::vector<Predicate> seen;
  while (auto p = next_predicate(var, space, false)) {
    seen.push_back(*p);
    record_distance(var, 2.9);  // ignored
  }
  EXPECT_EQ(seen, (std::vector<Predicate>{{0, 1.0}, {0, 2.0}, {0, 3.0}, {1, 1.0}, {1, 2.0}}));
}

TEST(NextPredicate, ThresholdsStrictlyIncreaseWithinADimension) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  const PredicateSpace space(StateBounds({{0.0, 3.0}, {0.0, 3.0}}),
                             {{0.25, 0.5, 1.0, 1.5, 2.0, 2.5, 3.0}, {0.5, 1.5, 2.5}});
  for (int trial = 0; trial < 1000; ++trial) {
    auto var = predicate_slot();
    std::optional<Predicate> prev;
    while (auto p = next_predicate(var, space)) {
      if (prev && prev->dim == p->dim) ASSERT_LT(prev->threshold, p->threshold);
      if (prev) ASSERT_LE(prev->dim, p->dim);
      prev = p;
      const int visits = static_cast<int>(rng() % 3);
      for (int i = 0; i < visits; ++i) {
        const double v = p->threshold + u(rng) / 2.0;  // the predicate held
        const auto before = var.distance;
        record_distance(var, v);
        if (before) ASSERT_LE(*var.distance, *before);
      }
    }
  }
}

TEST(RecordDistance, Examples) {
  auto var = predicate_slot();
  record_distance(var, 2.3);
  EXPECT_EQ(var.distance, 2.3);
  record_distance(var, 2.3);
  EXPECT_EQ(var.distance, 2.3);
  record_distance(var, 1.9);
  EXPECT_EQ(var.distance, 1.9);
}

TEST(RecordDistance, EqualsTheMinimumOfAnyVisitSequence) {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> u(0.0, 10.0);
  for (int trial = 0; trial < 2000; ++trial) {
    auto var = predicate_slot();
    double brute = kInf;
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      const double v = u(rng);
      record_distance(var, v);
      brute = std::min(brute, v);
    }
    ASSERT_EQ(*var.distance, brute);
  }
}

TEST(Symmetry, Examples) {
  EXPECT_TRUE(is_symmetric_redundant(DecisionTree::branch({1, 1.0}, L(1), L(1))));
  EXPECT_FALSE(is_symmetric_redundant(DecisionTree::branch({1, 1.0}, L(1), L(2))));
  const auto inner = DecisionTree::branch({1, 1.0}, L(1), L(2));
  EXPECT_TRUE(is_symmetric_redundant(DecisionTree::branch({0, 2.0}, inner, inner)));
  EXPECT_FALSE(is_symmetric_redundant(
      DecisionTree::branch({0, 2.0}, inner, DecisionTree::branch({1, 1.5}, L(1), L(2)))));
  EXPECT_FALSE(is_symmetric_redundant(L(1)));
}

TEST(Symmetry, AgreesWithSerializeAndCompare) {
  std::mt19937_64 rng(10);
  const std::function<DecisionTree(int)> gen = [&](int depth) {
    if (depth == 0 || rng() % 3 == 0) return L(static_cast<int>(rng() % 2));
    return DecisionTree::branch({rng() % 2, static_cast<double>(rng() % 2)}, gen(depth - 1),
                                gen(depth - 1));
  };
  const std::function<bool(const nlohmann::json&)> oracle = [&](const nlohmann::json& j) {
    if (!j.contains("dim")) return false;
    return j["true"].dump() == j["false"].dump() || oracle(j["true"]) || oracle(j["false"]);
  };
  int positives = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    const auto tree = gen(3);
    const bool expected = oracle(tree_to_json(tree));
    positives += expected;
    ASSERT_EQ(is_symmetric_redundant(tree), expected) << tree_to_json(tree).dump();
  }
  EXPECT_GT(positives, 100);
}

TEST(EvaluateCandidate, StrictImprovementIsReturned) {
  const auto p = line_problem({StateVector{5.0}});
  NodeDistances d;
  SearchStats stats;
  const auto tree = DecisionTree::branch({0, 2.0}, L(1), L(-1));
  const auto o = evaluate_candidate(p, tree, Outcome{Verdict::Satisfied, 50, 1}, true, d, stats);
  ASSERT_TRUE(o.has_value());
  EXPECT_EQ(*o, (Outcome{Verdict::Satisfied, 5, 1}));
  EXPECT_EQ(d[0], 5.0);
  EXPECT_EQ(stats.env_steps, 5u);
}

TEST(EvaluateCandidate, RolloutIsCutOneStepBeforeTheIncumbent) {
  // From 0 the goal takes 10 steps; an incumbent at 10 cuts the rollout at 9.
  const auto p = line_problem({StateVector{0.0}});
  NodeDistances d;
  SearchStats stats;
  EXPECT_FALSE(evaluate_candidate(p, L(1), Outcome{Verdict::Satisfied, 10, 0}, true, d, stats));
  EXPECT_EQ(stats.env_steps, 9u);
  stats = {};
  EXPECT_EQ(evaluate_candidate(p, L(1), Outcome{Verdict::Satisfied, 11, 0}, true, d, stats),
            (Outcome{Verdict::Satisfied, 10, 0}));
  stats = {};
  EXPECT_EQ(evaluate_candidate(p, L(1), Outcome{Verdict::Satisfied, 10, 0}, false, d, stats),
            (Outcome{Verdict::Satisfied, 10, 0}));
}

TEST(EvaluateCandidate, OnlyTheRejectedRolloutUpdatesDistances) {
  // x >= 2 ? (x >= 3 ? +1 : -1) : -1 from 5, 3 and 2.5: the first two reach
  // the goal, the third turns back and is cut at step 49.
  const auto p = line_problem({StateVector{5.0}, StateVector{3.0}, StateVector{2.5}});
  const auto tree =
      DecisionTree::branch({0, 2.0}, DecisionTree::branch({0, 3.0}, L(1), L(-1)), L(-1));
  NodeDistances d;
  SearchStats stats;
  EXPECT_FALSE(evaluate_candidate(p, tree, Outcome{Verdict::Satisfied, 50, 2}, true, d, stats));
  EXPECT_EQ(d, (NodeDistances{2.5, kInf, kInf, kInf, kInf}));
  EXPECT_EQ(stats.env_steps, 5u + 7u + 49u);

  // Without an incumbent every rollout runs to its verdict and all visits count.
  stats = {};
  const auto o = evaluate_candidate(p, tree, std::nullopt, true, d, stats);
  EXPECT_EQ(o, (Outcome{Verdict::Violated, 100, 2}));
  EXPECT_EQ(d, (NodeDistances{2.5, 3.0, kInf, kInf, kInf}));
}

TEST(EvaluateCandidate, WorstStateDecidesUnderMaximise) {
  SearchProblem p{std::make_shared<LineEnv>(),
                  std::make_shared<SafetySpecification>(
                      [](const StateVector& s) { return s[0] < 10.0; }, 20),
                  one_dim_space({0.0, 5.0}, {-100.0, 100.0}),
                  {StateVector{0.0}, StateVector{5.0}},
                  1,
                  1,
                  Mode::Maximise};
  NodeDistances d;
  SearchStats stats;
  EXPECT_EQ(evaluate_candidate(p, L(1), std::nullopt, true, d, stats),
            (Outcome{Verdict::Violated, 5, 0}));
  // Violating at step 5 cannot beat an incumbent violating at step 7.
  EXPECT_FALSE(evaluate_candidate(p, L(1), Outcome{Verdict::Violated, 7, 0}, true, d, stats));
  EXPECT_EQ(evaluate_candidate(p, L(-1), Outcome{Verdict::Violated, 7, 0}, true, d, stats),
            (Outcome{Verdict::Satisfied, 20, 0}));
}

TEST(Synthesise, ThresholdAtTheDistanceIsNeverEvaluated) {
  const auto p = constant_problem();
  std::vector<DecisionTree> seen;
  SearchOptions options;
  options.on_evaluate = [&](const DecisionTree& t) { seen.push_back(t); };
  synthesise(p, options);
  std::vector<double> thresholds;
  for (const auto& t : seen) {
    if (t.predicate_count() == 1) thresholds.push_back(t.nodes()[0].predicate.threshold);
  }
  // Actions vary fastest: threshold 1 with both asymmetric action pairs, then
  // the distance 2.3 gathered over those rollouts skips straight to 3.
  EXPECT_EQ(thresholds, (std::vector<double>{1.0, 1.0, 3.0, 3.0}));
}

TEST(Synthesise, UnprunedTriesEveryThresholdPerActionPair) {
  const auto p = constant_problem();
  std::map<std::pair<int, int>, int> per_pair;
  SearchOptions options = SearchOptions::oracle();
  options.on_evaluate = [&](const DecisionTree& t) {
    if (t.predicate_count() == 1) ++per_pair[{t.nodes()[1].action.value, t.nodes()[2].action.value}];
  };
  const auto r = synthesise_unpruned(p, options);
  EXPECT_EQ(per_pair.size(), 4u);
  for (const auto& [pair, n] : per_pair) EXPECT_EQ(n, 3);
  EXPECT_EQ(r.stats.trees_evaluated, 2u + 12u);
}

TEST(Synthesise, EmptyPredicateSpaceTriesOnlyLeaves) {
  auto p = constant_problem();
  p.predicates = one_dim_space({});
  std::vector<DecisionTree> seen;
  SearchOptions options;
  options.on_evaluate = [&](const DecisionTree& t) { seen.push_back(t); };
  const auto r = synthesise(p, options);
  EXPECT_EQ(seen, (std::vector<DecisionTree>{L(1), L(2)}));
  EXPECT_EQ(r.status, SearchStatus::NoSolution);
  EXPECT_EQ(r.best_tree, L(1));  // ties keep the incumbent
}

TEST(Synthesise, FindsTheSmallestOptimalTree) {
  auto p = line_problem({StateVector{0.0}}, 30);
  const auto r = synthesise(p);
  EXPECT_EQ(r.status, SearchStatus::Solved);
  EXPECT_EQ(r.best_tree, L(1));
  EXPECT_EQ(r.outcome, (Outcome{Verdict::Satisfied, 10, 0}));
}

TEST(Synthesise, NeedsAPredicateWhenStatesDisagree) {
  // Goal: x >= 10 or x <= -10. From 3 go right (7 steps), from -3 go left.
  SearchProblem p{std::make_shared<LineEnv>(),
                  std::make_shared<ReachSpecification>(
                      [](const StateVector& s) { return std::abs(s[0]) >= 10.0; }, 30),
                  one_dim_space({-2.0, 0.0, 2.0, 3.0, 5.0}, {-100.0, 100.0}),
                  {StateVector{3.0}, StateVector{-3.0}}};
  const auto r = synthesise(p);
  ASSERT_EQ(r.status, SearchStatus::Solved);
  EXPECT_EQ(r.outcome, (Outcome{Verdict::Satisfied, 7, 1}));
  // -2 is the first threshold separating the two states.
  EXPECT_EQ(r.best_tree, DecisionTree::branch({0, -2.0}, L(1), L(-1)));
}

TEST(Synthesise, IsDeterministic) {
  const auto b = make_benchmark("mountaincar", 200);
  SearchProblem p{b.environment, b.specification,
                  build_predicate_space(b.environment->bounds(), GridScheme{{6, 6}}),
                  {StateVector{-0.5, 0.0}, StateVector{-0.45, 0.0}}};
  const auto a = synthesise(p);
  const auto c = synthesise(p);
  EXPECT_EQ(tree_to_json(*a.best_tree).dump(), tree_to_json(*c.best_tree).dump());
  auto sa = a.stats, sc = c.stats;
  sa.wall_millis = sc.wall_millis = 0;
  EXPECT_EQ(sa, sc);
}

TEST(Synthesise, IncumbentNeverWorsens) {
  const auto b = make_benchmark("mountaincar", 300);
  SearchProblem p{b.environment, b.specification,
                  build_predicate_space(b.environment->bounds(), GridScheme{{8, 8}}),
                  {StateVector{-0.5, 0.0}}};
  std::vector<Outcome> history;
  SearchOptions options;
  options.on_incumbent = [&](const DecisionTree&, const Outcome& o) { history.push_back(o); };
  const auto r = synthesise(p, options);
  ASSERT_GE(history.size(), 2u);
  for (std::size_t i = 1; i < history.size(); ++i) {
    EXPECT_EQ(compare_outcomes(history[i], history[i - 1], p.mode), Comparison::ABetter);
  }
  EXPECT_EQ(history.back(), r.outcome);
}

TEST(Synthesise, RootThresholdsIncreaseWithinEachAssignment) {
  const auto b = make_benchmark("mountaincar", 200);
  SearchProblem p{b.environment, b.specification,
                  build_predicate_space(b.environment->bounds(), GridScheme{{6, 6}}),
                  {StateVector{-0.5, 0.0}}};
  p.depth_bound = 1;
  p.node_budget = 1;
  std::map<std::pair<int, int>, std::vector<Predicate>> roots;
  SearchOptions options;
  options.symmetry_pruning = false;
  options.on_evaluate = [&](const DecisionTree& t) {
    if (t.predicate_count() == 1) {
      roots[{t.nodes()[1].action.value, t.nodes()[2].action.value}].push_back(t.nodes()[0].predicate);
    }
  };
  synthesise(p, options);
  for (const auto& [pair, preds] : roots) {
    for (std::size_t i = 1; i < preds.size(); ++i) {
      ASSERT_LE(preds[i - 1].dim, preds[i].dim);
      if (preds[i - 1].dim == preds[i].dim) ASSERT_LT(preds[i - 1].threshold, preds[i].threshold);
    }
  }
}

TEST(Synthesise, TimesOutAtThePastDeadline) {
  const auto b = make_benchmark("mountaincar", 200);
  SearchProblem p{b.environment, b.specification,
                  build_predicate_space(b.environment->bounds(), GridScheme{{20, 20}}),
                  {StateVector{-0.5, 0.0}}};
  SearchOptions options;
  options.deadline = std::chrono::steady_clock::now();
  EXPECT_EQ(synthesise(p, options).status, SearchStatus::TimedOut);
}

TEST(SynthesiseUnpruned, RefusesOversizedSpaces) {
  const auto b = make_benchmark("mountaincar");
  SearchProblem p{b.environment, b.specification,
                  build_predicate_space(b.environment->bounds(), IncrementScheme{{0.05, 0.005}, {}}),
                  {StateVector{-0.5, 0.0}}};
  // 64 predicates, n = 3: 64^3 * 2^4.
  EXPECT_EQ(search_space_size(p), 64.0L * 64 * 64 * 16);
  SearchOptions options = SearchOptions::oracle();
  options.oracle_cap = 1e6L;
  EXPECT_THROW(synthesise_unpruned(p, options), OracleCapExceeded);
}

TEST(SearchProblem, ValidationErrors) {
  auto p = constant_problem();
  p.node_budget = 0;
  EXPECT_THROW(p.validate(), ConfigError);
  p = constant_problem();
  p.initial_states = {StateVector{5.0}};
  EXPECT_THROW(synthesise(p), ConfigError);
  p = constant_problem();
  p.initial_states.clear();
  EXPECT_THROW(synthesise(p), ConfigError);
  p = constant_problem();
  p.environment = std::make_shared<ConstantEnv>(std::vector<ActionId>{});
  EXPECT_THROW(synthesise(p), ConfigError);
}
