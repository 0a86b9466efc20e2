#pragma once

#include "stmpc/geom.hpp"
#include "stmpc/vehicle.hpp"

namespace stmpc {

// Wheel-space box [-Omega, Omega]^2 as a 4-row polytope.
Polytope2 build_wheel_polytope(const RobotParams& p);

// Rhombus of admissible (v, w): rows of the wheel box right-multiplied by T^-1.
Polytope2 build_unicycle_polytope(const RobotParams& p);

// Orientation-dependent admissible set of the linearized inputs:
// H(theta) = H_d T^-1 T_FL(theta).
Polytope2 build_H_theta(double theta, const RobotParams& p);

// Radius of the worst-case circular inner approximation of U(theta).
double inner_radius(const RobotParams& p);
// Radius of the circular outer approximation of U(theta).
double outer_radius(const RobotParams& p);

// Vertices by intersecting adjacent row pairs (4-row polytopes only need 2x2 solves).
std::vector<Vec2> polytope_vertices(const Polytope2& P);

struct InputConstraintSuite {
  Polytope2 wheel_box;
  Polytope2 unicycle_rhombus;
  double r_u_inner = 0.0;
  double r_u_outer = 0.0;
  RobotParams params;

  static InputConstraintSuite build(const RobotParams& p);
};

}  // namespace stmpc
