#pragma once

#include <cstddef>
#include <memory>
#include <string_view>
#include <vector>

#include "broccoli/environment.hpp"
#include "broccoli/sampler.hpp"

namespace broccoli {

// Classic-control dynamics with two actions {-1, 1}: full force (or torque)
// to the left or to the right. Constants follow the Gymnasium implementations.

namespace cartpole {
inline constexpr double kGravity = 9.8;
inline constexpr double kCartMass = 1.0;
inline constexpr double kPoleMass = 0.1;
inline constexpr double kTotalMass = kCartMass + kPoleMass;
inline constexpr double kHalfLength = 0.5;
inline constexpr double kPoleMassLength = kPoleMass * kHalfLength;
inline constexpr double kForceMag = 10.0;
inline constexpr double kTau = 0.02;
inline constexpr double kPositionLimit = 2.4;
inline constexpr double kAngleLimit = 24.0 * 3.14159265358979323846 / 360.0;
/// Finite predicate range for the unbounded velocity dimensions.
inline constexpr double kVelocityRange = 3.0;
}  // namespace cartpole

namespace mountaincar {
inline constexpr double kForce = 0.001;
inline constexpr double kGravity = 0.0025;
inline constexpr double kMinPosition = -1.2;
inline constexpr double kMaxPosition = 0.6;
inline constexpr double kMaxSpeed = 0.07;
inline constexpr double kGoalPosition = 0.5;
}  // namespace mountaincar

namespace pendulum {
inline constexpr double kGravity = 10.0;
inline constexpr double kMass = 1.0;
inline constexpr double kLength = 1.0;
inline constexpr double kDt = 0.05;
inline constexpr double kMaxSpeed = 8.0;
inline constexpr double kMaxTorque = 2.0;
inline constexpr double kGoalTolerance = 0.1;
}  // namespace pendulum

/// (x, x_dot, theta, theta_dot), explicit Euler integration.
StateVector cartpole_step(const StateVector& state, ActionId action);
/// (x, x_dot), velocity and position clipped, velocity zeroed at the left wall.
StateVector mountaincar_step(const StateVector& state, ActionId action);
/// (theta, theta_dot), theta = 0 upright, theta wrapped to (-pi, pi].
StateVector pendulum_step(const StateVector& state, ActionId action);

class CartPole final : public Environment {
 public:
  CartPole();
  std::string_view name() const override { return "cartpole"; }
  const StateBounds& bounds() const override { return bounds_; }
  std::span<const ActionId> actions() const override;
  StateVector step(const StateVector& s, ActionId a) const override { return cartpole_step(s, a); }
  std::vector<std::string> dimension_names() const override;

 private:
  StateBounds bounds_;
};

class MountainCar final : public Environment {
 public:
  MountainCar();
  std::string_view name() const override { return "mountaincar"; }
  const StateBounds& bounds() const override { return bounds_; }
  std::span<const ActionId> actions() const override;
  StateVector step(const StateVector& s, ActionId a) const override { return mountaincar_step(s, a); }
  std::vector<std::string> dimension_names() const override;

 private:
  StateBounds bounds_;
};

class Pendulum final : public Environment {
 public:
  Pendulum();
  std::string_view name() const override { return "pendulum"; }
  const StateBounds& bounds() const override { return bounds_; }
  std::span<const ActionId> actions() const override;
  StateVector step(const StateVector& s, ActionId a) const override { return pendulum_step(s, a); }
  std::vector<std::string> dimension_names() const override;

 private:
  StateBounds bounds_;
};

/// A built-in environment with its specification and initial-state ranges.
struct Benchmark {
  std::shared_ptr<const Environment> environment;
  std::shared_ptr<const Specification> specification;
  std::vector<SamplingInterval> initial_ranges;
};

inline constexpr std::size_t kDefaultStepBound = 10'000;

/// "cartpole" | "mountaincar" | "pendulum". Throws ConfigError otherwise.
Benchmark make_benchmark(std::string_view name, std::size_t step_bound = kDefaultStepBound);

std::vector<std::string_view> benchmark_names();

}  // namespace broccoli
