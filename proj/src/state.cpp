#include "broccoli/state.hpp"

#include <cmath>
#include <cstring>
#include <string>

#include "broccoli/errors.hpp"

namespace broccoli {

StateVector::StateVector(std::initializer_list<double> values)
    : StateVector(std::span<const double>(values.begin(), values.size())) {}

StateVector::StateVector(std::span<const double> values) : size_(values.size()) {
  if (values.size() > kMaxDimension) {
    throw UsageError("state dimension " + std::to_string(values.size()) + " exceeds maximum " +
                     std::to_string(kMaxDimension));
  }
  for (std::size_t i = 0; i < values.size(); ++i) values_[i] = values[i];
}

bool StateVector::all_finite() const {
  for (std::size_t i = 0; i < size_; ++i) {
    if (!std::isfinite(values_[i])) return false;
  }
  return true;
}

bool StateVector::bitwise_equal(const StateVector& other) const {
  return size_ == other.size_ &&
         std::memcmp(values_.data(), other.values_.data(), size_ * sizeof(double)) == 0;
}

bool operator==(const StateVector& a, const StateVector& b) {
  if (a.size_ != b.size_) return false;
  for (std::size_t i = 0; i < a.size_; ++i) {
    if (a.values_[i] != b.values_[i]) return false;
  }
  return true;
}

StateBounds::StateBounds(std::vector<Interval> intervals) : intervals_(std::move(intervals)) {
  if (intervals_.size() > kMaxDimension) {
    throw ConfigError("bounds dimension exceeds maximum of " + std::to_string(kMaxDimension));
  }
  for (std::size_t i = 0; i < intervals_.size(); ++i) {
    const Interval& iv = intervals_[i];
    if (!(iv.lower < iv.upper) || !std::isfinite(iv.lower) || !std::isfinite(iv.upper)) {
      throw ConfigError("bounds of dimension " + std::to_string(i) +
                        " must be finite with lower < upper");
    }
  }
}

bool StateBounds::contains(const StateVector& s) const {
  if (s.size() != intervals_.size()) return false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!intervals_[i].contains(s[i])) return false;
  }
  return true;
}

}  // namespace broccoli
