#include "stmpc/vehicle.hpp"

#include <cmath>
#include <stdexcept>

namespace stmpc {

void RobotParams::validate() const {
  if (!(wheel_radius > 0.0)) throw std::invalid_argument("RobotParams: wheel_radius must be > 0");
  if (!(axle_length > 0.0)) throw std::invalid_argument("RobotParams: axle_length must be > 0");
  if (!(max_wheel_speed > 0.0)) throw std::invalid_argument("RobotParams: max_wheel_speed must be > 0");
  if (!(displacement > 0.0)) throw std::invalid_argument("RobotParams: displacement must be > 0");
  if (!(sample_time > 0.0)) throw std::invalid_argument("RobotParams: sample_time must be > 0");
}

Pose diff_drive_step(const Pose& q, const WheelSpeeds& w, const RobotParams& p) {
  const double sum = w.right + w.left;
  const double diff = w.right - w.left;
  Pose out;
  out.x = q.x + p.sample_time * p.wheel_radius / 2.0 * sum * std::cos(q.theta);
  out.y = q.y + p.sample_time * p.wheel_radius / 2.0 * sum * std::sin(q.theta);
  out.theta = q.theta + p.sample_time * p.wheel_radius / p.axle_length * diff;
  return out;
}

UnicycleInput wheels_to_unicycle(const WheelSpeeds& w, const RobotParams& p) {
  UnicycleInput u;
  u.v = p.wheel_radius / 2.0 * (w.right + w.left);
  u.omega = p.wheel_radius / p.axle_length * (w.right - w.left);
  return u;
}

WheelSpeeds unicycle_to_wheels(const UnicycleInput& u, const RobotParams& p) {
  WheelSpeeds w;
  w.right = u.v / p.wheel_radius + p.axle_length * u.omega / (2.0 * p.wheel_radius);
  w.left = u.v / p.wheel_radius - p.axle_length * u.omega / (2.0 * p.wheel_radius);
  return w;
}

Pose unicycle_step(const Pose& q, const UnicycleInput& u, const RobotParams& p) {
  Pose out;
  out.x = q.x + p.sample_time * u.v * std::cos(q.theta);
  out.y = q.y + p.sample_time * u.v * std::sin(q.theta);
  out.theta = q.theta + p.sample_time * u.omega;
  return out;
}

Vec2 output_map(const Pose& q, double b) {
  return {q.x + b * std::cos(q.theta), q.y + b * std::sin(q.theta)};
}

UnicycleInput fl_input_transform(double theta, const Vec2& u, double b) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  UnicycleInput out;
  out.v = c * u.x + s * u.y;
  out.omega = (-s * u.x + c * u.y) / b;
  return out;
}

Vec2 fl_input_inverse(double theta, const UnicycleInput& u, double b) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * u.v - b * s * u.omega, s * u.v + b * c * u.omega};
}

Vec2 lin_model_step(const Vec2& z, const Vec2& u, double Ts) {
  return z + Ts * u;
}

double internal_dynamics_step(double theta, const Vec2& u, const RobotParams& p) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return theta + p.sample_time * (-s * u.x + c * u.y) / p.displacement;
}

}  // namespace stmpc
