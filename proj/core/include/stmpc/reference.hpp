#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "stmpc/geom.hpp"
#include "stmpc/vehicle.hpp"

namespace stmpc {

/// Leader reference sampled at tick resolution with analytic derivatives.
struct ReferenceTrajectory {
  std::vector<double> x, y;      // [m]
  std::vector<double> xd, yd;    // [m/s]
  std::vector<double> xdd, ydd;  // [m/s^2]
  double Ts = 0.0;

  std::size_t size() const { return x.size(); }
};

struct ReferenceSample {
  Pose pose;      // (x_r, y_r, theta_r)
  double v = 0.0;
  double omega = 0.0;
  Vec2 u_ff;      // feed-forward input of the linearized model
  Vec2 z;         // linearized reference point
};

struct SafetyParams {
  double safe_distance = 0.0;  // [m]
  double min_ref_speed = 0.0;  // [m/s]
};

struct SafetyViolation {
  std::size_t tick = 0;
  int follower = -1;  // -1 marks a speed violation
  double value = 0.0; // offending distance or speed
};

struct SafetyReport {
  std::vector<SafetyViolation> distance_violations;
  std::vector<SafetyViolation> speed_violations;
  bool ok() const { return distance_violations.empty() && speed_violations.empty(); }
};

/// C2 natural cubic spline through the waypoints, each segment time-scaled so
/// its average speed equals avg_speed. Rejects duplicate consecutive waypoints.
ReferenceTrajectory plan_spline(std::span<const Vec2> waypoints, double avg_speed, double Ts);

// Analytic trajectories used as oracles and simple scenarios.
ReferenceTrajectory plan_line(const Vec2& start, double heading, double speed,
                              double Ts, std::size_t ticks);
ReferenceTrajectory plan_circle(const Vec2& center, double radius, double speed,
                                double Ts, std::size_t ticks, double phase = 0.0);
ReferenceTrajectory plan_figure_eight(const Vec2& center, double lobe, double speed,
                                      double Ts, std::size_t ticks);

/// Reference pose, velocities, feed-forward input, and linearized point at tick k.
/// Throws on a singular reference (zero longitudinal speed).
ReferenceSample sample_reference(const ReferenceTrajectory& traj, std::size_t k, double b);

SafetyReport validate_safety(const ReferenceTrajectory& traj,
                             std::span<const Vec2> follower_positions,
                             const SafetyParams& s, double b);

/// Largest |u_r| over the trajectory; drives the disturbance-bound audit.
double max_ref_input_norm(const ReferenceTrajectory& traj, double b);

/// One stored tick of the leader's broadcast history.
struct LeaderLogEntry {
  Pose pose;
  UnicycleInput input;
};

/// Entry at index max(0, k - eta); before valid history exists the leader's
/// initial pose is held with zero inputs.
LeaderLogEntry delayed_ref(std::span<const LeaderLogEntry> buffer, std::size_t k,
                           std::size_t eta);

}  // namespace stmpc
