#include "broccoli/tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "broccoli/errors.hpp"

namespace broccoli {
namespace {

// Appends `src` to `dst`, shifting child indices by the insertion offset.
template <typename Node>
void append_shifted(std::vector<Node>& dst, const std::vector<Node>& src) {
  const auto offset = static_cast<std::int32_t>(dst.size());
  for (Node n : src) {
    if (n.left != kNoChild) n.left += offset;
    if (n.right != kNoChild) n.right += offset;
    dst.push_back(n);
  }
}

std::size_t depth_from(const std::vector<ShapeNode>& nodes, std::int32_t i) {
  const ShapeNode& n = nodes[i];
  if (n.kind == SlotKind::Action) return 0;
  return 1 + std::max(depth_from(nodes, n.left), depth_from(nodes, n.right));
}

void shape_string(const std::vector<ShapeNode>& nodes, std::int32_t i, std::string& out) {
  const ShapeNode& n = nodes[i];
  if (n.kind == SlotKind::Action) {
    out += 'A';
    return;
  }
  out += "P(";
  shape_string(nodes, n.left, out);
  out += ',';
  shape_string(nodes, n.right, out);
  out += ')';
}

nlohmann::json node_to_json(const std::vector<TreeNode>& nodes, std::int32_t i) {
  const TreeNode& n = nodes[i];
  if (!n.assigned) throw UsageError("cannot serialise an incomplete tree");
  if (n.kind == SlotKind::Action) return nlohmann::json{{"action", n.action.value}};
  return nlohmann::json{{"dim", n.predicate.dim},
                        {"threshold", n.predicate.threshold},
                        {"true", node_to_json(nodes, n.left)},
                        {"false", node_to_json(nodes, n.right)}};
}

DecisionTree node_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("tree node must be a JSON object");
  if (j.contains("action")) {
    if (j.size() != 1 || !j["action"].is_number_integer()) {
      throw UsageError("leaf node must be {\"action\": int}");
    }
    return DecisionTree::leaf(ActionId{j["action"].get<int>()});
  }
  for (const char* key : {"dim", "threshold", "true", "false"}) {
    if (!j.contains(key)) throw UsageError(std::string("predicate node is missing \"") + key + "\"");
  }
  if (j.size() != 4 || !j["dim"].is_number_unsigned() || !j["threshold"].is_number()) {
    throw UsageError("predicate node must be {\"dim\": uint, \"threshold\": number, \"true\", \"false\"}");
  }
  const double threshold = j["threshold"].get<double>();
  if (!std::isfinite(threshold)) throw UsageError("predicate threshold must be finite");
  return DecisionTree::branch(Predicate{j["dim"].get<std::size_t>(), threshold},
                              node_from_json(j["true"]), node_from_json(j["false"]));
}

std::string format_number(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void node_string(const std::vector<TreeNode>& nodes, std::int32_t i,
                 const std::vector<std::string>& names, std::string& out) {
  const TreeNode& n = nodes[i];
  if (!n.assigned) {
    out += '?';
    return;
  }
  if (n.kind == SlotKind::Action) {
    out += std::to_string(n.action.value);
    return;
  }
  const std::string name =
      n.predicate.dim < names.size() ? names[n.predicate.dim] : "s" + std::to_string(n.predicate.dim);
  out += '[' + name + " >= " + format_number(n.predicate.threshold) + " ? ";
  node_string(nodes, n.left, names, out);
  out += " : ";
  node_string(nodes, n.right, names, out);
  out += ']';
}

}  // namespace

TreeShape::TreeShape() : nodes_{ShapeNode{}} {}

TreeShape TreeShape::join(const TreeShape& left, const TreeShape& right) {
  TreeShape s;
  s.nodes_.clear();
  s.nodes_.push_back(ShapeNode{SlotKind::Predicate, 1, kNoChild});
  append_shifted(s.nodes_, left.nodes_);
  s.nodes_[0].right = static_cast<std::int32_t>(s.nodes_.size());
  append_shifted(s.nodes_, right.nodes_);
  return s;
}

std::size_t TreeShape::predicate_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const ShapeNode& n) { return n.kind == SlotKind::Predicate; }));
}

std::size_t TreeShape::depth() const { return depth_from(nodes_, 0); }

std::string TreeShape::to_string() const {
  std::string out;
  shape_string(nodes_, 0, out);
  return out;
}

DecisionTree::DecisionTree(const TreeShape& shape) {
  nodes_.reserve(shape.nodes().size());
  for (const ShapeNode& s : shape.nodes()) {
    TreeNode n;
    n.kind = s.kind;
    n.left = s.left;
    n.right = s.right;
    nodes_.push_back(n);
  }
}

DecisionTree DecisionTree::leaf(ActionId action) {
  DecisionTree t;
  TreeNode n;
  n.kind = SlotKind::Action;
  n.assigned = true;
  n.action = action;
  t.nodes_.push_back(n);
  return t;
}

DecisionTree DecisionTree::branch(Predicate predicate, const DecisionTree& if_true,
                                  const DecisionTree& if_false) {
  DecisionTree t;
  TreeNode root;
  root.kind = SlotKind::Predicate;
  root.assigned = true;
  root.predicate = predicate;
  root.left = 1;
  t.nodes_.push_back(root);
  append_shifted(t.nodes_, if_true.nodes_);
  t.nodes_[0].right = static_cast<std::int32_t>(t.nodes_.size());
  append_shifted(t.nodes_, if_false.nodes_);
  return t;
}

TreeShape DecisionTree::shape() const {
  // Rebuild recursively from the pre-order list.
  struct Rec {
    const std::vector<TreeNode>& nodes;
    TreeShape operator()(std::int32_t i) const {
      const TreeNode& n = nodes[i];
      if (n.kind == SlotKind::Action) return TreeShape();
      return TreeShape::join((*this)(n.left), (*this)(n.right));
    }
  };
  return Rec{nodes_}(0);
}

std::size_t DecisionTree::predicate_count() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.kind == SlotKind::Predicate; }));
}

bool DecisionTree::complete() const {
  return std::all_of(nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.assigned; });
}

void DecisionTree::assign(std::size_t slot, Predicate predicate) {
  if (slot >= nodes_.size() || nodes_[slot].kind != SlotKind::Predicate) {
    throw UsageError("slot " + std::to_string(slot) + " is not a predicate slot");
  }
  nodes_[slot].predicate = predicate;
  nodes_[slot].assigned = true;
}

void DecisionTree::assign(std::size_t slot, ActionId action) {
  if (slot >= nodes_.size() || nodes_[slot].kind != SlotKind::Action) {
    throw UsageError("slot " + std::to_string(slot) + " is not an action slot");
  }
  nodes_[slot].action = action;
  nodes_[slot].assigned = true;
}

std::size_t DecisionTree::subtree_end(std::size_t slot) const {
  // In pre-order a subtree is contiguous; walk down the rightmost spine.
  std::size_t i = slot;
  while (nodes_[i].kind == SlotKind::Predicate) i = static_cast<std::size_t>(nodes_[i].right);
  return i + 1;
}

bool DecisionTree::subtrees_equal(std::size_t a, std::size_t b) const {
  const std::size_t len = subtree_end(a) - a;
  if (subtree_end(b) - b != len) return false;
  for (std::size_t k = 0; k < len; ++k) {
    const TreeNode& x = nodes_[a + k];
    const TreeNode& y = nodes_[b + k];
    if (x.kind != y.kind || x.assigned != y.assigned) return false;
    if (x.kind == SlotKind::Action) {
      if (x.action != y.action) return false;
    } else {
      if (!(x.predicate == y.predicate)) return false;
      // Same relative layout of children.
      if (x.left - static_cast<std::int32_t>(a) != y.left - static_cast<std::int32_t>(b)) return false;
      if (x.right - static_cast<std::int32_t>(a) != y.right - static_cast<std::int32_t>(b)) return false;
    }
  }
  return true;
}

ActionId evaluate_tree(const DecisionTree& tree, const StateVector& state) {
  if (!tree.complete()) throw UsageError("cannot evaluate an incomplete tree");
  for (const TreeNode& n : tree.nodes()) {
    if (n.kind == SlotKind::Predicate && n.predicate.dim >= state.size()) {
      throw UsageError("predicate on dimension " + std::to_string(n.predicate.dim) +
                       " but state has dimension " + std::to_string(state.size()));
    }
  }
  return tree.decide(state);
}

nlohmann::json tree_to_json(const DecisionTree& tree) { return node_to_json(tree.nodes(), 0); }

DecisionTree tree_from_json(const nlohmann::json& j) { return node_from_json(j); }

std::string tree_to_string(const DecisionTree& tree, const std::vector<std::string>& dim_names) {
  std::string out;
  node_string(tree.nodes(), 0, dim_names, out);
  return out;
}

}  // namespace broccoli
