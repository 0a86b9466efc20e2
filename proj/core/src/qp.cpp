#include "stmpc/qp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace stmpc {

namespace {

bool feasible(const Vec2& u, std::span<const Ball2> balls, std::span<const Vec2> rows,
              double tol) {
  for (const Ball2& b : balls) {
    if ((u - b.center).norm() > b.radius + tol) return false;
  }
  for (const Vec2& h : rows) {
    if (h.dot(u) > 1.0 + tol) return false;
  }
  return true;
}

// Intersection points of the line h.u = 1 with the circle |u - c| = r.
void line_circle(const Vec2& h, const Ball2& b, std::vector<Vec2>& out) {
  const double hn2 = h.norm_sq();
  if (hn2 < 1e-300) return;
  const Vec2 foot = b.center + h * ((1.0 - h.dot(b.center)) / hn2);
  const double d2 = (foot - b.center).norm_sq();
  const double rem = b.radius * b.radius - d2;
  if (rem < 0.0) return;
  const Vec2 dir = h.perp() / std::sqrt(hn2);
  const double s = std::sqrt(rem);
  out.push_back(foot + dir * s);
  out.push_back(foot - dir * s);
}

// Intersection points of circles |u - c1| = r1 and |u - c2| = r2.
void circle_circle(const Ball2& a, const Ball2& b, std::vector<Vec2>& out) {
  const Vec2 delta = b.center - a.center;
  const double d = delta.norm();
  if (d < 1e-14) return;
  const double t = (d * d + a.radius * a.radius - b.radius * b.radius) / (2.0 * d);
  const double rem = a.radius * a.radius - t * t;
  if (rem < 0.0) return;
  const Vec2 axis = delta / d;
  const Vec2 base = a.center + axis * t;
  const Vec2 side = axis.perp() * std::sqrt(rem);
  out.push_back(base + side);
  out.push_back(base - side);
}

}  // namespace

std::optional<Vec2> solve_qp2(const Vec2& cost_center,
                              std::span<const Ball2> balls,
                              std::span<const Vec2> rows) {
  std::vector<Vec2> candidates;
  candidates.reserve(4 + rows.size() * (rows.size() + 3) + 6 * balls.size());

  // Unconstrained optimum.
  candidates.push_back(cost_center);

  // Single half-plane active: projection onto h.u = 1.
  for (const Vec2& h : rows) {
    const double hn2 = h.norm_sq();
    if (hn2 < 1e-300) continue;
    candidates.push_back(cost_center + h * ((1.0 - h.dot(cost_center)) / hn2));
  }

  // Two half-planes active: corner of the polytope.
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t k = i + 1; k < rows.size(); ++k) {
      const Vec2& a = rows[i];
      const Vec2& b = rows[k];
      const double det = a.x * b.y - a.y * b.x;
      if (std::abs(det) < 1e-14) continue;
      candidates.push_back({(b.y - a.y) / det, (a.x - b.x) / det});
    }
  }

  // Single ball active: radial projection.
  for (const Ball2& b : balls) {
    const Vec2 delta = cost_center - b.center;
    const double d = delta.norm();
    if (d > 1e-14) candidates.push_back(b.center + delta * (b.radius / d));
  }

  // Ball + half-plane active.
  for (const Ball2& b : balls) {
    for (const Vec2& h : rows) line_circle(h, b, candidates);
  }

  // Two balls active.
  for (std::size_t i = 0; i < balls.size(); ++i) {
    for (std::size_t k = i + 1; k < balls.size(); ++k) {
      circle_circle(balls[i], balls[k], candidates);
    }
  }

  std::optional<Vec2> best;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const Vec2& u : candidates) {
    if (!feasible(u, balls, rows, kQpTol)) continue;
    const double cost = (u - cost_center).norm_sq();
    if (cost < best_cost) {
      best_cost = cost;
      best = u;
    }
  }
  return best;
}

std::optional<Vec2> solve_qp2(const Vec2& cost_center, const Ball2& ball,
                              std::span<const Vec2> rows) {
  return solve_qp2(cost_center, std::span<const Ball2>(&ball, 1), rows);
}

}  // namespace stmpc
