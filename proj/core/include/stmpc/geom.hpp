#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace stmpc {

inline constexpr double kGeomTol = 1e-12;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2 operator-() const { return {-x, -y}; }

  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double norm() const { return std::hypot(x, y); }
  double norm_sq() const { return x * x + y * y; }
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// Closed disk { p : |p - center| <= radius }.
struct Ball2 {
  Vec2 center;
  double radius = 0.0;

  Ball2() = default;
  Ball2(Vec2 c, double r) : center(c), radius(r) {
    if (!(r >= 0.0)) throw std::invalid_argument("Ball2: negative radius");
  }
};

/// H-representation polytope { u : rows[i] . u <= 1 for all i }.
/// Right-hand sides are fixed at 1, so the set always contains the origin.
struct Polytope2 {
  std::vector<Vec2> rows;

  Polytope2() = default;
  explicit Polytope2(std::vector<Vec2> r) : rows(std::move(r)) {}

  // Bounded iff the row normals leave no angular gap >= pi.
  bool is_bounded() const;
};

bool ball_contains(const Ball2& b, const Vec2& p);
bool balls_intersect(const Ball2& a, const Ball2& b);
bool polytope_contains(const Polytope2& P, const Vec2& u);
double point_to_ball_distance(const Vec2& p, const Ball2& b);

}  // namespace stmpc
