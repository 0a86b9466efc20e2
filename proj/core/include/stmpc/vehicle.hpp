#pragma once

#include "stmpc/geom.hpp"

namespace stmpc {

/// Physical and discretization constants shared by every transformation.
struct RobotParams {
  double wheel_radius = 0.0;    // R [m]
  double axle_length = 0.0;     // D [m]
  double max_wheel_speed = 0.0; // [rad/s]
  double displacement = 0.0;    // b [m], offset of the controlled point B
  double sample_time = 0.0;     // Ts [s]

  void validate() const;
};

struct Pose {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;  // unwrapped
};

struct WheelSpeeds {
  double right = 0.0;  // [rad/s]
  double left = 0.0;
};

struct UnicycleInput {
  double v = 0.0;      // [m/s]
  double omega = 0.0;  // [rad/s]
};

// Exact discrete differential-drive kinematics.
Pose diff_drive_step(const Pose& q, const WheelSpeeds& w, const RobotParams& p);

// [v, w] = T [wR, wL], T = [[R/2, R/2], [R/D, -R/D]]; exact inverse pair.
UnicycleInput wheels_to_unicycle(const WheelSpeeds& w, const RobotParams& p);
WheelSpeeds unicycle_to_wheels(const UnicycleInput& u, const RobotParams& p);

Pose unicycle_step(const Pose& q, const UnicycleInput& u, const RobotParams& p);

/// Position of the point B displaced by b along the heading.
Vec2 output_map(const Pose& q, double b);

// [v, w] = T_FL(theta) [u1, u2], T_FL = [[cos, sin], [-sin/b, cos/b]].
UnicycleInput fl_input_transform(double theta, const Vec2& u, double b);
// Inverse map: [u1, u2] = T_FL(theta)^-1 [v, w].
Vec2 fl_input_inverse(double theta, const UnicycleInput& u, double b);

/// Double single-integrator model used for control: z+ = z + Ts u.
Vec2 lin_model_step(const Vec2& z, const Vec2& u, double Ts);

/// Heading evolution left unlinearized by the output choice.
double internal_dynamics_step(double theta, const Vec2& u, const RobotParams& p);

}  // namespace stmpc
