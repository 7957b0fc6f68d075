#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "broccoli/state.hpp"

namespace broccoli {

/// Axis-aligned test `s[dim] >= threshold`.
struct Predicate {
  std::size_t dim = 0;
  double threshold = 0.0;

  bool holds(const StateVector& s) const { return s[dim] >= threshold; }
  friend bool operator==(const Predicate&, const Predicate&) = default;
};

/// Thresholds at offset + m * increment for every integer m, per dimension.
struct IncrementScheme {
  std::vector<double> increments;
  std::vector<double> offsets;  // empty means 0 for every dimension
};

/// X equally spaced thresholds lower + j * (upper - lower) / X, j = 1..X.
struct GridScheme {
  std::vector<std::size_t> counts;
};

using PredicateScheme = std::variant<IncrementScheme, GridScheme>;

/// The discretised predicate set: per dimension, strictly increasing
/// thresholds inside (lower, upper].
class PredicateSpace {
 public:
  PredicateSpace() = default;
  PredicateSpace(StateBounds bounds, std::vector<std::vector<double>> thresholds,
                 PredicateScheme scheme = IncrementScheme{});

  std::size_t dimension() const { return thresholds_.size(); }
  const std::vector<double>& thresholds(std::size_t dim) const { return thresholds_[dim]; }
  const StateBounds& bounds() const { return bounds_; }
  const PredicateScheme& scheme() const { return scheme_; }

  /// |P|, the number of distinct predicates across all dimensions.
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  bool contains(const Predicate& p) const;

 private:
  StateBounds bounds_;
  std::vector<std::vector<double>> thresholds_;
  PredicateScheme scheme_;
};

/// Builds the threshold grid for `bounds`. Throws ConfigError on a
/// non-positive increment, a zero count, a dimension mismatch, or when every
/// dimension ends up empty.
PredicateSpace build_predicate_space(const StateBounds& bounds, const PredicateScheme& scheme);

}  // namespace broccoli
