#include "stmpc/geom.hpp"

#include <algorithm>

namespace stmpc {

bool ball_contains(const Ball2& b, const Vec2& p) {
  return (p - b.center).norm() <= b.radius + kGeomTol;
}

bool balls_intersect(const Ball2& a, const Ball2& b) {
  return (a.center - b.center).norm() <= a.radius + b.radius + kGeomTol;
}

bool polytope_contains(const Polytope2& P, const Vec2& u) {
  for (const Vec2& h : P.rows) {
    if (h.dot(u) > 1.0 + kGeomTol) return false;
  }
  return true;
}

double point_to_ball_distance(const Vec2& p, const Ball2& b) {
  return std::max(0.0, (p - b.center).norm() - b.radius);
}

bool Polytope2::is_bounded() const {
  if (rows.size() < 3) return false;
  std::vector<double> angles;
  angles.reserve(rows.size());
  for (const Vec2& h : rows) {
    if (h.norm() <= kGeomTol) continue;
    angles.push_back(std::atan2(h.y, h.x));
  }
  if (angles.size() < 3) return false;
  std::sort(angles.begin(), angles.end());
  double max_gap = angles.front() + 2.0 * M_PI - angles.back();
  for (std::size_t i = 1; i < angles.size(); ++i) {
    max_gap = std::max(max_gap, angles[i] - angles[i - 1]);
  }
  return max_gap < M_PI - kGeomTol;
}

}  // namespace stmpc
