#pragma once

#include <optional>
#include <span>

#include "stmpc/geom.hpp"

namespace stmpc {

inline constexpr double kQpTol = 1e-8;

/// Minimizer of |u - cost_center|^2 over the intersection of the given balls
/// (at most two are ever used by the controllers) and half-planes rows[i].u <= 1.
/// Strictly convex cost, so the minimizer is unique. Solved by enumerating the
/// closed-form candidates for every possible active set and keeping the feasible
/// one with least cost. Returns nullopt when the region is empty.
std::optional<Vec2> solve_qp2(const Vec2& cost_center,
                              std::span<const Ball2> balls,
                              std::span<const Vec2> rows);

/// Single-ball convenience matching the controllers' common case.
std::optional<Vec2> solve_qp2(const Vec2& cost_center, const Ball2& ball,
                              std::span<const Vec2> rows);

}  // namespace stmpc
