#pragma once

#include <optional>
#include <vector>

#include "stmpc/geom.hpp"
#include "stmpc/qp.hpp"

namespace stmpc {

/// Bound on the feed-forward/disturbance input and its position-space image.
struct DisturbanceModel {
  double input_radius = 0.0;     // [m/s]
  double position_radius = 0.0;  // [m] = Ts * input_radius

  static DisturbanceModel from_input_bound(double r, double Ts);
  static DisturbanceModel from_position_radius(double rp, double Ts);
};

/// Precomputed nested family of circular robust one-step controllable sets.
/// radii[0] is the terminal RCI radius (the disturbance ball); each further
/// radius follows r_j = r_{j-1} - r_d + Ts r_u.
struct ROSCFamily {
  std::vector<double> radii;
  double Ts = 0.0;
  double input_radius = 0.0;        // r_u used in construction
  double disturbance_radius = 0.0;  // r_d in position units

  static ROSCFamily build(const DisturbanceModel& d, double r_u, double Ts,
                          std::size_t family_size);

  /// Smallest j with |err| <= r_j, or nullopt when the error is outside the
  /// covered region (caller must abort: the guarantee no longer applies).
  std::optional<int> membership_index(const Vec2& err) const;
};

enum class ControlMode { RoscQp, RciTerminal, Stopped };

/// Admissible input region for one agent: a ball, optionally intersected with
/// the current orientation-dependent polytope.
struct InputConstraint {
  Ball2 ball;
  std::optional<Polytope2> poly;

  bool contains(const Vec2& u) const;
};

struct ControlDecision {
  Vec2 u;
  ControlMode mode = ControlMode::RciTerminal;
  int index = 0;
  double qp_cost = 0.0;
};

/// One-step controllable mode: minimize |err + Ts u|^2 subject to landing the
/// disturbance-robust error in the (j-1)-th set and the input constraint.
ControlDecision rosc_step_control(const Vec2& err, const Vec2& u_ff,
                                  const ROSCFamily& family, int j,
                                  const InputConstraint& K);

/// Terminal mode: u = -err/Ts + best admissible feed-forward.
ControlDecision rci_step_control(const Vec2& err, const Vec2& u_ff,
                                 const InputConstraint& K, double Ts);

/// Dispatch on the membership index; nullopt when the error is uncovered.
std::optional<ControlDecision> step_control(const Vec2& err, const Vec2& u_ff,
                                            const ROSCFamily& family,
                                            const InputConstraint& K);

}  // namespace stmpc
