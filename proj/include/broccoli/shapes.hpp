#pragma once

#include <cstddef>
#include <vector>

#include "broccoli/tree.hpp"

namespace broccoli {

/// Every skeleton with at most `node_budget` predicate slots and depth at most
/// `depth_bound`, ordered by predicate count. Within a size class the order is
/// that of the recursive construction: left subtree sizes from largest to
/// smallest, and for each split every left subtree paired with every right one.
std::vector<TreeShape> enumerate_shapes(std::size_t depth_bound, std::size_t node_budget);

/// All skeletons with exactly `predicates` predicate slots and depth at most
/// `depth_bound`, in the same order.
std::vector<TreeShape> shapes_of_size(std::size_t predicates, std::size_t depth_bound);

}  // namespace broccoli
