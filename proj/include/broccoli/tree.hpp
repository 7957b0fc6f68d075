#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "broccoli/predicate.hpp"
#include "broccoli/state.hpp"

namespace broccoli {

enum class SlotKind : std::uint8_t { Predicate, Action };

inline constexpr std::int32_t kNoChild = -1;

/// One slot of a tree skeleton. Children are indices into the owning
/// pre-order node list.
struct ShapeNode {
  SlotKind kind = SlotKind::Action;
  std::int32_t left = kNoChild;
  std::int32_t right = kNoChild;

  friend bool operator==(const ShapeNode&, const ShapeNode&) = default;
};

/// Binary tree skeleton stored in pre-order (root first, then the left
/// subtree, then the right subtree). Leaves are exactly the action slots.
class TreeShape {
 public:
  /// The single-leaf skeleton.
  TreeShape();

  static TreeShape join(const TreeShape& left, const TreeShape& right);

  const std::vector<ShapeNode>& nodes() const { return nodes_; }
  std::size_t slot_count() const { return nodes_.size(); }
  std::size_t predicate_count() const;
  /// Number of predicate levels on the longest root-to-leaf path.
  std::size_t depth() const;

  /// Compact textual form, e.g. "P(P(A,A),A)".
  std::string to_string() const;

  friend bool operator==(const TreeShape&, const TreeShape&) = default;

 private:
  std::vector<ShapeNode> nodes_;
};

struct TreeNode {
  SlotKind kind = SlotKind::Action;
  bool assigned = false;
  Predicate predicate;
  ActionId action;
  std::int32_t left = kNoChild;
  std::int32_t right = kNoChild;

  friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// A tree policy: a skeleton plus a predicate per inner slot and an action per
/// leaf. The true branch of a predicate is its left child.
class DecisionTree {
 public:
  /// Unassigned tree over `shape`.
  explicit DecisionTree(const TreeShape& shape);

  static DecisionTree leaf(ActionId action);
  static DecisionTree branch(Predicate predicate, const DecisionTree& if_true,
                             const DecisionTree& if_false);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  TreeShape shape() const;
  std::size_t predicate_count() const;
  bool complete() const;

  void assign(std::size_t slot, Predicate predicate);
  void assign(std::size_t slot, ActionId action);

  /// Root-to-leaf descent without validation. Callers guarantee completeness
  /// and matching dimension.
  ActionId decide(const StateVector& state) const {
    std::int32_t i = 0;
    while (nodes_[i].kind == SlotKind::Predicate) {
      const TreeNode& n = nodes_[i];
      i = n.predicate.holds(state) ? n.left : n.right;
    }
    return nodes_[i].action;
  }

  /// Structural equality of the subtrees rooted at slots `a` and `b`.
  bool subtrees_equal(std::size_t a, std::size_t b) const;
  /// Index one past the last slot of the subtree rooted at `slot`.
  std::size_t subtree_end(std::size_t slot) const;

  friend bool operator==(const DecisionTree&, const DecisionTree&) = default;

 private:
  DecisionTree() = default;

  std::vector<TreeNode> nodes_;
};

/// Action chosen by `tree` in `state`. Throws UsageError if the tree is
/// incomplete or a predicate references a dimension the state does not have.
ActionId evaluate_tree(const DecisionTree& tree, const StateVector& state);

/// Nested JSON: `{"dim", "threshold", "true", "false"}` for predicate nodes,
/// `{"action"}` for leaves.
nlohmann::json tree_to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::json& j);

/// One-line human-readable rendering, e.g. `[x >= -0.45 ? 1 : -1]`. Dimension
/// names default to s0, s1, ...
std::string tree_to_string(const DecisionTree& tree,
                           const std::vector<std::string>& dim_names = {});

}  // namespace broccoli
