#include "broccoli/shapes.hpp"

namespace broccoli {

std::vector<TreeShape> shapes_of_size(std::size_t predicates, std::size_t depth_bound) {
  if (predicates == 0) return {TreeShape()};
  if (depth_bound == 0) return {};
  std::vector<TreeShape> out;
  for (std::size_t left = predicates; left-- > 0;) {
    const std::size_t right = predicates - 1 - left;
    const auto lefts = shapes_of_size(left, depth_bound - 1);
    if (lefts.empty()) continue;
    const auto rights = shapes_of_size(right, depth_bound - 1);
    for (const auto& l : lefts) {
      for (const auto& r : rights) out.push_back(TreeShape::join(l, r));
    }
  }
  return out;
}

std::vector<TreeShape> enumerate_shapes(std::size_t depth_bound, std::size_t node_budget) {
  std::vector<TreeShape> out;
  for (std::size_t n = 0; n <= node_budget; ++n) {
    auto layer = shapes_of_size(n, depth_bound);
    if (layer.empty()) break;  // larger sizes cannot fit the depth bound either
    for (auto& s : layer) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace broccoli
