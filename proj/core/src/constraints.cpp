#include "stmpc/constraints.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace stmpc {

namespace {

// Row vector times 2x2 matrix (row-major m = {m00, m01, m10, m11}).
Vec2 row_times(const Vec2& h, const std::array<double, 4>& m) {
  return {h.x * m[0] + h.y * m[2], h.x * m[1] + h.y * m[3]};
}

std::array<double, 4> t_inverse(const RobotParams& p) {
  const double R = p.wheel_radius;
  const double D = p.axle_length;
  return {1.0 / R, D / (2.0 * R), 1.0 / R, -D / (2.0 * R)};
}

std::array<double, 4> t_fl(double theta, double b) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, s, -s / b, c / b};
}

}  // namespace

Polytope2 build_wheel_polytope(const RobotParams& p) {
  p.validate();
  const double w = 1.0 / p.max_wheel_speed;
  Polytope2 P({{-w, 0.0}, {0.0, -w}, {w, 0.0}, {0.0, w}});
  if (!P.is_bounded()) throw std::logic_error("wheel polytope unbounded");
  return P;
}

Polytope2 build_unicycle_polytope(const RobotParams& p) {
  const Polytope2 box = build_wheel_polytope(p);
  const auto Tinv = t_inverse(p);
  Polytope2 P;
  P.rows.reserve(box.rows.size());
  for (const Vec2& h : box.rows) P.rows.push_back(row_times(h, Tinv));
  if (!P.is_bounded()) throw std::logic_error("unicycle polytope unbounded");
  return P;
}

Polytope2 build_H_theta(double theta, const RobotParams& p) {
  const Polytope2 rhombus = build_unicycle_polytope(p);
  const auto Tfl = t_fl(theta, p.displacement);
  Polytope2 P;
  P.rows.reserve(rhombus.rows.size());
  for (const Vec2& h : rhombus.rows) P.rows.push_back(row_times(h, Tfl));
  return P;
}

double inner_radius(const RobotParams& p) {
  p.validate();
  const double num = 2.0 * p.max_wheel_speed * p.wheel_radius * p.displacement;
  const double den = std::sqrt(4.0 * p.displacement * p.displacement +
                               p.axle_length * p.axle_length);
  return num / den;
}

double outer_radius(const RobotParams& p) {
  p.validate();
  const double a = p.max_wheel_speed * p.wheel_radius;
  const double b = 2.0 * p.max_wheel_speed * p.wheel_radius * p.displacement / p.axle_length;
  return std::max(a, b);
}

std::vector<Vec2> polytope_vertices(const Polytope2& P) {
  const std::size_t n = P.rows.size();
  std::vector<Vec2> verts;
  if (n < 3) return verts;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = i + 1; k < n; ++k) {
      const Vec2& a = P.rows[i];
      const Vec2& b = P.rows[k];
      const double det = a.x * b.y - a.y * b.x;
      if (std::abs(det) < 1e-14) continue;
      const Vec2 v{(b.y - a.y) / det, (a.x - b.x) / det};
      if (polytope_contains(P, v)) verts.push_back(v);
    }
  }
  return verts;
}

InputConstraintSuite InputConstraintSuite::build(const RobotParams& p) {
  InputConstraintSuite s;
  s.params = p;
  s.wheel_box = build_wheel_polytope(p);
  s.unicycle_rhombus = build_unicycle_polytope(p);
  s.r_u_inner = inner_radius(p);
  s.r_u_outer = outer_radius(p);
  if (!(s.r_u_inner < s.r_u_outer)) {
    throw std::logic_error("InputConstraintSuite: inner radius must be below outer radius");
  }
  return s;
}

}  // namespace stmpc
