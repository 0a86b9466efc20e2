#pragma once

#include <cstddef>
#include <vector>

#include "stmpc/constraints.hpp"
#include "stmpc/geom.hpp"
#include "stmpc/reference.hpp"
#include "stmpc/stmpc.hpp"
#include "stmpc/vehicle.hpp"

namespace stmpc {

struct LeaderBroadcast {
  std::size_t tick = 0;
  Pose pose;
  double v = 0.0;
  double omega = 0.0;
};

struct ReachableSetMsg {
  std::size_t tick = 0;
  Ball2 ball;
};

enum class GateDecision { Proceed, StopAndDelay };

/// One-step reachable positions under any admissible input (outer input
/// approximation), inflated by the body radius.
Ball2 reachable_ball(const Vec2& z, double r_u_outer, double Ts, double body_radius);

/// Stop-and-delay policy: fires iff the two reachable balls intersect.
/// Throws on mismatched ticks (protocol violation).
GateDecision collision_gate(const ReachableSetMsg& mine, const ReachableSetMsg& predecessor);

struct AgentConfig {
  Pose initial_pose;
  std::size_t desired_delay = 0;  // ticks; ignored for the leader
};

/// One log row per agent per tick.
struct LogRow {
  std::size_t tick = 0;
  int agent = 0;
  Pose pose;
  Vec2 z;
  Vec2 z_ref;
  double err_norm = 0.0;
  int index = -1;
  ControlMode mode = ControlMode::RciTerminal;
  Vec2 u;
  double v = 0.0;
  double omega = 0.0;
  double wheel_right = 0.0;
  double wheel_left = 0.0;
  std::size_t eta = 0;
  bool gate_fired = false;
  double min_dist_to_pred = -1.0;  // -1 for the leader
  double x_ref = 0.0;              // geometric-center reference, drives the IAE
  double y_ref = 0.0;
};

/// Deterministic per-tick orchestration of the leader and follower algorithms.
/// Message exchange goes through in-process per-tick mailboxes with the same
/// contract a networked transport would honor.
class Formation {
 public:
  Formation(const RobotParams& params, const InputConstraintSuite& suite,
            ReferenceTrajectory trajectory, std::vector<AgentConfig> agents,
            ROSCFamily leader_family, ROSCFamily follower_family,
            double leader_input_radius, double body_radius);

  std::size_t agent_count() const { return poses_.size(); }
  const std::vector<Pose>& poses() const { return poses_; }
  const std::vector<std::size_t>& delays() const { return delays_; }
  const ReferenceTrajectory& trajectory() const { return trajectory_; }

  /// Runs one tick: leader first, followers in ascending index, then the exact
  /// plant update. Ticks must be requested in order starting from 0.
  std::vector<LogRow> step(std::size_t k);

 private:
  RobotParams params_;
  InputConstraintSuite suite_;
  ReferenceTrajectory trajectory_;
  ROSCFamily leader_family_;
  ROSCFamily follower_family_;
  double leader_input_radius_ = 0.0;
  double body_radius_ = 0.0;

  std::vector<Pose> poses_;
  std::vector<std::size_t> delays_;
  std::vector<LeaderLogEntry> leader_history_;
  std::size_t next_tick_ = 0;
};

}  // namespace stmpc
