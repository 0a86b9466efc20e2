#include "stmpc/stmpc.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace stmpc {

DisturbanceModel DisturbanceModel::from_input_bound(double r, double Ts) {
  if (!(r > 0.0) || !(Ts > 0.0)) {
    throw std::invalid_argument("DisturbanceModel: bounds must be > 0");
  }
  return {r, Ts * r};
}

DisturbanceModel DisturbanceModel::from_position_radius(double rp, double Ts) {
  if (!(rp > 0.0) || !(Ts > 0.0)) {
    throw std::invalid_argument("DisturbanceModel: bounds must be > 0");
  }
  return {rp / Ts, rp};
}

ROSCFamily ROSCFamily::build(const DisturbanceModel& d, double r_u, double Ts,
                             std::size_t family_size) {
  const double growth = Ts * r_u - d.position_radius;
  if (!(growth > 0.0)) {
    std::ostringstream msg;
    msg << "ROSCFamily: family does not grow, Ts*r_u = " << Ts * r_u
        << " must exceed disturbance radius " << d.position_radius;
    throw std::invalid_argument(msg.str());
  }
  ROSCFamily f;
  f.Ts = Ts;
  f.input_radius = r_u;
  f.disturbance_radius = d.position_radius;
  f.radii.resize(family_size + 1);
  f.radii[0] = d.position_radius;
  for (std::size_t j = 1; j <= family_size; ++j) {
    f.radii[j] = f.radii[j - 1] + growth;
  }
  return f;
}

std::optional<int> ROSCFamily::membership_index(const Vec2& err) const {
  const double n = err.norm();
  // Radii are strictly increasing, so binary search for the first cover.
  if (n > radii.back() + kGeomTol) return std::nullopt;
  std::size_t lo = 0, hi = radii.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (n <= radii[mid] + kGeomTol) hi = mid; else lo = mid + 1;
  }
  return static_cast<int>(lo);
}

bool InputConstraint::contains(const Vec2& u) const {
  if (!ball_contains(ball, u)) return false;
  return !poly || polytope_contains(*poly, u);
}

ControlDecision rosc_step_control(const Vec2& err, const Vec2& u_ff,
                                  const ROSCFamily& family, int j,
                                  const InputConstraint& K) {
  if (j < 1 || static_cast<std::size_t>(j) >= family.radii.size()) {
    throw std::invalid_argument("rosc_step_control: index must address a non-terminal set");
  }
  const double Ts = family.Ts;
  // In input coordinates the cost is Ts^2 |u - (-err/Ts)|^2 and the target-set
  // constraint becomes a ball around u_ff - err/Ts of radius r_{j-1}/Ts.
  const Vec2 cost_center = -err / Ts;
  const Ball2 target{u_ff - err / Ts, family.radii[static_cast<std::size_t>(j) - 1] / Ts};
  std::vector<Ball2> balls{target, K.ball};
  std::span<const Vec2> rows =
      K.poly ? std::span<const Vec2>(K.poly->rows) : std::span<const Vec2>();
  const auto u = solve_qp2(cost_center, balls, rows);
  if (!u) {
    std::ostringstream msg;
    msg << "rosc_step_control: infeasible at j=" << j << ", |err|=" << err.norm()
        << ", |u_ff|=" << u_ff.norm() << " (feed-forward exceeds disturbance bound?)";
    throw std::runtime_error(msg.str());
  }
  ControlDecision d;
  d.u = *u;
  d.mode = ControlMode::RoscQp;
  d.index = j;
  d.qp_cost = (err + Ts * d.u).norm_sq();
  return d;
}

ControlDecision rci_step_control(const Vec2& err, const Vec2& u_ff,
                                 const InputConstraint& K, double Ts) {
  // u = -err/Ts + u_hat where u_hat minimizes |u_hat - u_ff| subject to the
  // shifted input landing inside K; equivalently project u_ff - err/Ts onto K.
  const Vec2 cost_center = u_ff - err / Ts;
  std::span<const Vec2> rows =
      K.poly ? std::span<const Vec2>(K.poly->rows) : std::span<const Vec2>();
  const auto u = solve_qp2(cost_center, K.ball, rows);
  if (!u) throw std::runtime_error("rci_step_control: empty input constraint");
  ControlDecision d;
  d.u = *u;
  d.mode = ControlMode::RciTerminal;
  d.index = 0;
  d.qp_cost = (d.u - cost_center).norm_sq();
  return d;
}

std::optional<ControlDecision> step_control(const Vec2& err, const Vec2& u_ff,
                                            const ROSCFamily& family,
                                            const InputConstraint& K) {
  const auto j = family.membership_index(err);
  if (!j) return std::nullopt;
  if (*j > 0) return rosc_step_control(err, u_ff, family, *j, K);
  return rci_step_control(err, u_ff, K, family.Ts);
}

}  // namespace stmpc
