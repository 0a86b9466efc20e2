#pragma once

#include <optional>
#include <string>
#include <vector>

#include "stmpc/geom.hpp"
#include "stmpc/platoon.hpp"
#include "stmpc/reference.hpp"
#include "stmpc/vehicle.hpp"

namespace stmpc {

// 1200 steps/s correspond to 38.71 rad/s on the Khepera IV wheel encoders.
inline constexpr double kRadPerStep = 38.71 / 1200.0;

struct TrajectorySpec {
  std::string type;  // "spline", "line", "circle", "figure8"
  std::vector<Vec2> waypoints;
  double avg_speed = 0.0;
  // analytic parameters
  Vec2 center;
  Vec2 start;
  double heading = 0.0;
  double radius = 0.0;
  double lobe = 0.0;
  double speed = 0.0;
  double phase = 0.0;
};

struct Scenario {
  int schema = 1;
  RobotParams robot;
  std::vector<AgentConfig> agents;  // [0] leader
  TrajectorySpec trajectory;
  double leader_input_radius = 0.0;      // r_u of the leader's online ball
  double leader_disturbance_radius = 0.0;  // position units
  double follower_input_disturbance = 0.0; // input units; defaults to leader_input_radius
  std::size_t family_size = 1000;
  SafetyParams safety;
  double body_radius = 0.0;
  std::size_t ticks = 0;

  static Scenario from_json_text(const std::string& text);
  static Scenario from_file(const std::string& path);

  ReferenceTrajectory build_trajectory() const;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Startup validations: initial ordering, planner safety, reference speed,
/// disturbance-bound audit, family growth, and the leader/worst-case input
/// nesting. All must pass before a run starts.
std::vector<CheckResult> run_checks(const Scenario& s);

}  // namespace stmpc
