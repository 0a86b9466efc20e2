#include "stmpc/platoon.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stmpc {

Ball2 reachable_ball(const Vec2& z, double r_u_outer, double Ts, double body_radius) {
  return Ball2{z, Ts * r_u_outer + body_radius};
}

GateDecision collision_gate(const ReachableSetMsg& mine, const ReachableSetMsg& predecessor) {
  if (mine.tick != predecessor.tick) {
    throw std::invalid_argument("collision_gate: reachable-set messages from different ticks");
  }
  return balls_intersect(mine.ball, predecessor.ball) ? GateDecision::StopAndDelay
                                                      : GateDecision::Proceed;
}

Formation::Formation(const RobotParams& params, const InputConstraintSuite& suite,
                     ReferenceTrajectory trajectory, std::vector<AgentConfig> agents,
                     ROSCFamily leader_family, ROSCFamily follower_family,
                     double leader_input_radius, double body_radius)
    : params_(params),
      suite_(suite),
      trajectory_(std::move(trajectory)),
      leader_family_(std::move(leader_family)),
      follower_family_(std::move(follower_family)),
      leader_input_radius_(leader_input_radius),
      body_radius_(body_radius) {
  if (agents.empty()) throw std::invalid_argument("Formation: no agents");
  if (!(leader_input_radius_ > 0.0) || leader_input_radius_ > suite_.r_u_inner + kGeomTol) {
    throw std::invalid_argument(
        "Formation: leader input radius must lie inside the worst-case input ball");
  }
  if (body_radius_ < 0.0) throw std::invalid_argument("Formation: negative body radius");

  poses_.reserve(agents.size());
  delays_.reserve(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    poses_.push_back(agents[i].initial_pose);
    delays_.push_back(i == 0 ? 0 : agents[i].desired_delay);
    if (i > 0 && agents[i].desired_delay < 1) {
      throw std::invalid_argument("Formation: follower delay must be >= 1 tick");
    }
    if (i > 1 && agents[i].desired_delay <= agents[i - 1].desired_delay) {
      throw std::invalid_argument("Formation: desired delays must increase with the index");
    }
  }

  // Initial configurations must be sequentially ordered by distance from the leader.
  const Vec2 z0 = output_map(poses_[0], params_.displacement);
  double prev = 0.0;
  for (std::size_t i = 1; i < poses_.size(); ++i) {
    const double d = (output_map(poses_[i], params_.displacement) - z0).norm_sq();
    if (i > 1 && d <= prev) {
      std::ostringstream msg;
      msg << "Formation: initial ordering violated at agent " << i;
      throw std::invalid_argument(msg.str());
    }
    prev = d;
  }
}

std::vector<LogRow> Formation::step(std::size_t k) {
  if (k != next_tick_) throw std::logic_error("Formation::step: ticks must be sequential");
  if (k >= trajectory_.size()) throw std::runtime_error("Formation::step: trajectory exhausted");
  ++next_tick_;

  const double Ts = params_.sample_time;
  const double b = params_.displacement;
  const std::size_t n = poses_.size();

  std::vector<Vec2> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = output_map(poses_[i], b);

  std::vector<LogRow> rows(n);
  std::vector<WheelSpeeds> wheels(n);
  ReachableSetMsg predecessor_msg;  // same-tick message consumed by agent i+1

  // Leader.
  {
    const ReferenceSample ref = sample_reference(trajectory_, k, b);
    const Vec2 err = z[0] - ref.z;
    const InputConstraint K{Ball2{{0.0, 0.0}, leader_input_radius_}, std::nullopt};
    const auto decision = step_control(err, ref.u_ff, leader_family_, K);
    if (!decision) {
      std::ostringstream msg;
      msg << "membership NONE at tick " << k << " agent 0 (|err|=" << err.norm() << ")";
      throw std::runtime_error(msg.str());
    }
    const UnicycleInput uni = fl_input_transform(poses_[0].theta, decision->u, b);
    wheels[0] = unicycle_to_wheels(uni, params_);
    leader_history_.push_back({poses_[0], uni});
    predecessor_msg = {k, reachable_ball(z[0], suite_.r_u_outer, Ts, body_radius_)};

    LogRow& row = rows[0];
    row.tick = k;
    row.agent = 0;
    row.pose = poses_[0];
    row.z = z[0];
    row.z_ref = ref.z;
    row.err_norm = err.norm();
    row.index = decision->index;
    row.mode = decision->mode;
    row.u = decision->u;
    row.v = uni.v;
    row.omega = uni.omega;
    row.wheel_right = wheels[0].right;
    row.wheel_left = wheels[0].left;
    row.x_ref = ref.pose.x;
    row.y_ref = ref.pose.y;
  }

  // Followers, ascending index; each consumes its predecessor's same-tick ball.
  for (std::size_t i = 1; i < n; ++i) {
    const ReachableSetMsg own{k, reachable_ball(z[i], suite_.r_u_outer, Ts, body_radius_)};
    const GateDecision gate = collision_gate(own, predecessor_msg);

    const LeaderLogEntry delayed = delayed_ref(leader_history_, k, delays_[i]);
    const Vec2 z_ref = output_map(delayed.pose, b);
    const Vec2 u_ff = fl_input_inverse(delayed.pose.theta, delayed.input, b);
    const Vec2 err = z[i] - z_ref;

    LogRow& row = rows[i];
    row.tick = k;
    row.agent = static_cast<int>(i);
    row.pose = poses_[i];
    row.z = z[i];
    row.z_ref = z_ref;
    row.err_norm = err.norm();
    row.eta = delays_[i];
    row.min_dist_to_pred = (z[i] - z[i - 1]).norm();
    row.x_ref = delayed.pose.x;
    row.y_ref = delayed.pose.y;

    if (gate == GateDecision::StopAndDelay) {
      wheels[i] = {0.0, 0.0};
      delays_[i] += 1;
      row.mode = ControlMode::Stopped;
      const auto j = follower_family_.membership_index(err);
      row.index = j ? *j : -1;
      row.gate_fired = true;
    } else {
      const InputConstraint K{Ball2{{0.0, 0.0}, suite_.r_u_outer},
                              build_H_theta(poses_[i].theta, params_)};
      const auto decision = step_control(err, u_ff, follower_family_, K);
      if (!decision) {
        std::ostringstream msg;
        msg << "membership NONE at tick " << k << " agent " << i
            << " (|err|=" << err.norm() << ")";
        throw std::runtime_error(msg.str());
      }
      const UnicycleInput uni = fl_input_transform(poses_[i].theta, decision->u, b);
      wheels[i] = unicycle_to_wheels(uni, params_);
      row.index = decision->index;
      row.mode = decision->mode;
      row.u = decision->u;
      row.v = uni.v;
      row.omega = uni.omega;
      row.wheel_right = wheels[i].right;
      row.wheel_left = wheels[i].left;
    }
    predecessor_msg = own;
  }

  // Exact plant update for every agent.
  for (std::size_t i = 0; i < n; ++i) {
    poses_[i] = diff_drive_step(poses_[i], wheels[i], params_);
  }
  return rows;
}

}  // namespace stmpc
