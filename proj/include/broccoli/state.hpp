#pragma once

#include <array>
#include <cstddef>
#include <compare>
#include <initializer_list>
#include <span>
#include <vector>

namespace broccoli {

/// Upper limit on the state dimension of any environment.
inline constexpr std::size_t kMaxDimension = 8;

/// Observable environment state. Fixed capacity so that stepping an
/// environment never allocates.
class StateVector {
 public:
  StateVector() = default;
  StateVector(std::initializer_list<double> values);
  explicit StateVector(std::span<const double> values);

  std::size_t size() const { return size_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return {values_.data(), size_}; }

  bool all_finite() const;

  /// Bitwise equality of every component (distinguishes -0.0 and NaN payloads).
  bool bitwise_equal(const StateVector& other) const;

  friend bool operator==(const StateVector& a, const StateVector& b);

 private:
  std::array<double, kMaxDimension> values_{};
  std::size_t size_ = 0;
};

/// Closed interval [lower, upper].
struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool contains(double v) const { return lower <= v && v <= upper; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Per-dimension closed bounds; every interval has lower < upper.
class StateBounds {
 public:
  StateBounds() = default;
  explicit StateBounds(std::vector<Interval> intervals);

  std::size_t dimension() const { return intervals_.size(); }
  const Interval& operator[](std::size_t i) const { return intervals_[i]; }
  const std::vector<Interval>& intervals() const { return intervals_; }

  bool contains(const StateVector& s) const;

 private:
  std::vector<Interval> intervals_;
};

/// Member of an environment's finite integer action set.
struct ActionId {
  int value = 0;

  auto operator<=>(const ActionId&) const = default;
};

}  // namespace broccoli
