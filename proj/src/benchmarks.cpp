#include "broccoli/benchmarks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace broccoli {
namespace {

constexpr std::array<ActionId, 2> kTwoActions{ActionId{-1}, ActionId{1}};

void require_two_action(ActionId a, std::string_view env) {
  if (a.value != -1 && a.value != 1) {
    throw UsageError(std::string(env) + ": action must be -1 or 1, got " + std::to_string(a.value));
  }
}

void require_dimension(const StateVector& s, std::size_t d, std::string_view env) {
  if (s.size() != d) {
    throw UsageError(std::string(env) + ": expected a state of dimension " + std::to_string(d) +
                     ", got " + std::to_string(s.size()));
  }
}

}  // namespace

StateVector cartpole_step(const StateVector& state, ActionId action) {
  using namespace cartpole;
  require_dimension(state, 4, "cartpole");
  require_two_action(action, "cartpole");
  const double x = state[0];
  const double x_dot = state[1];
  const double theta = state[2];
  const double theta_dot = state[3];

  const double force = action.value == 1 ? kForceMag : -kForceMag;
  const double costheta = std::cos(theta);
  const double sintheta = std::sin(theta);
  const double temp = (force + kPoleMassLength * theta_dot * theta_dot * sintheta) / kTotalMass;
  const double thetaacc = (kGravity * sintheta - costheta * temp) /
                          (kHalfLength * (4.0 / 3.0 - kPoleMass * costheta * costheta / kTotalMass));
  const double xacc = temp - kPoleMassLength * thetaacc * costheta / kTotalMass;

  return StateVector{x + kTau * x_dot, x_dot + kTau * xacc, theta + kTau * theta_dot,
                     theta_dot + kTau * thetaacc};
}

StateVector mountaincar_step(const StateVector& state, ActionId action) {
  using namespace mountaincar;
  require_dimension(state, 2, "mountaincar");
  require_two_action(action, "mountaincar");
  double position = state[0];
  double velocity = state[1];

  velocity += action.value * kForce - std::cos(3.0 * position) * kGravity;
  velocity = std::clamp(velocity, -kMaxSpeed, kMaxSpeed);
  position += velocity;
  position = std::clamp(position, kMinPosition, kMaxPosition);
  if (position == kMinPosition && velocity < 0.0) velocity = 0.0;
  return StateVector{position, velocity};
}

StateVector pendulum_step(const StateVector& state, ActionId action) {
  using namespace pendulum;
  require_dimension(state, 2, "pendulum");
  require_two_action(action, "pendulum");
  const double theta = state[0];
  const double theta_dot = state[1];

  const double torque = action.value * kMaxTorque;
  double new_theta_dot =
      theta_dot + (3.0 * kGravity / (2.0 * kLength) * std::sin(theta) +
                   3.0 / (kMass * kLength * kLength) * torque) * kDt;
  new_theta_dot = std::clamp(new_theta_dot, -kMaxSpeed, kMaxSpeed);
  double new_theta = theta + new_theta_dot * kDt;
  // Wrap only when outside (-pi, pi] so in-range angles keep their exact bits.
  if (new_theta > std::numbers::pi || new_theta <= -std::numbers::pi) {
    double t = std::fmod(new_theta + std::numbers::pi, 2.0 * std::numbers::pi);
    if (t <= 0.0) t += 2.0 * std::numbers::pi;
    new_theta = t - std::numbers::pi;
  }
  return StateVector{new_theta, new_theta_dot};
}

CartPole::CartPole()
    : bounds_({{-cartpole::kPositionLimit, cartpole::kPositionLimit},
               {-cartpole::kVelocityRange, cartpole::kVelocityRange},
               {-cartpole::kAngleLimit, cartpole::kAngleLimit},
               {-cartpole::kVelocityRange, cartpole::kVelocityRange}}) {}

std::span<const ActionId> CartPole::actions() const { return kTwoActions; }

std::vector<std::string> CartPole::dimension_names() const {
  return {"x", "x_dot", "theta", "theta_dot"};
}

MountainCar::MountainCar()
    : bounds_({{mountaincar::kMinPosition, mountaincar::kMaxPosition},
               {-mountaincar::kMaxSpeed, mountaincar::kMaxSpeed}}) {}

std::span<const ActionId> MountainCar::actions() const { return kTwoActions; }

std::vector<std::string> MountainCar::dimension_names() const { return {"x", "x_dot"}; }

Pendulum::Pendulum()
    : bounds_({{-std::numbers::pi, std::numbers::pi},
               {-pendulum::kMaxSpeed, pendulum::kMaxSpeed}}) {}

std::span<const ActionId> Pendulum::actions() const { return kTwoActions; }

std::vector<std::string> Pendulum::dimension_names() const { return {"theta", "theta_dot"}; }

Benchmark make_benchmark(std::string_view name, std::size_t step_bound) {
  Benchmark b;
  if (name == "cartpole") {
    b.environment = std::make_shared<CartPole>();
    b.specification = std::make_shared<SafetySpecification>(
        [](const StateVector& s) {
          return std::abs(s[0]) <= cartpole::kPositionLimit &&
                 std::abs(s[2]) <= cartpole::kAngleLimit;
        },
        step_bound);
    b.initial_ranges = {{-0.05, 0.05}, {-0.05, 0.05}, {-0.05, 0.05}, {-0.05, 0.05}};
  } else if (name == "mountaincar") {
    b.environment = std::make_shared<MountainCar>();
    b.specification = std::make_shared<ReachSpecification>(
        [](const StateVector& s) { return s[0] >= mountaincar::kGoalPosition; }, step_bound);
    b.initial_ranges = {{-0.6, -0.4}, {0.0, 0.0}};
  } else if (name == "pendulum") {
    b.environment = std::make_shared<Pendulum>();
    b.specification = std::make_shared<ReachSpecification>(
        [](const StateVector& s) {
          return std::abs(s[0]) <= pendulum::kGoalTolerance &&
                 std::abs(s[1]) <= pendulum::kGoalTolerance;
        },
        step_bound);
    b.initial_ranges = {{-0.8, -0.5}, {-0.2, 0.2}};
  } else {
    throw ConfigError("unknown environment '" + std::string(name) +
                      "' (expected cartpole, mountaincar or pendulum)");
  }
  return b;
}

std::vector<std::string_view> benchmark_names() { return {"cartpole", "mountaincar", "pendulum"}; }

}  // namespace broccoli
