#include "stmpc/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace stmpc {

namespace {

// Natural cubic spline over arbitrary knots, one coordinate.
struct Spline1D {
  std::vector<double> t;   // knots
  std::vector<double> v;   // values
  std::vector<double> m;   // second derivatives at knots

  void fit() {
    const std::size_t n = t.size();
    m.assign(n, 0.0);
    if (n < 3) return;
    std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), r(n, 0.0);
    b[0] = 1.0;
    b[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double h0 = t[i] - t[i - 1];
      const double h1 = t[i + 1] - t[i];
      a[i] = h0 / 6.0;
      b[i] = (h0 + h1) / 3.0;
      c[i] = h1 / 6.0;
      r[i] = (v[i + 1] - v[i]) / h1 - (v[i] - v[i - 1]) / h0;
    }
    // Thomas algorithm.
    for (std::size_t i = 1; i < n; ++i) {
      const double w = a[i] / b[i - 1];
      b[i] -= w * c[i - 1];
      r[i] -= w * r[i - 1];
    }
    m[n - 1] = r[n - 1] / b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) {
      m[i] = (r[i] - c[i] * m[i + 1]) / b[i];
    }
  }

  std::size_t segment(double tau) const {
    std::size_t lo = 0, hi = t.size() - 1;
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      if (t[mid] <= tau) lo = mid; else hi = mid;
    }
    return lo;
  }

  void eval(double tau, double& f, double& fd, double& fdd) const {
    const std::size_t i = segment(tau);
    const double h = t[i + 1] - t[i];
    const double A = (t[i + 1] - tau) / h;
    const double B = (tau - t[i]) / h;
    f = A * v[i] + B * v[i + 1] +
        ((A * A * A - A) * m[i] + (B * B * B - B) * m[i + 1]) * h * h / 6.0;
    fd = (v[i + 1] - v[i]) / h -
         (3.0 * A * A - 1.0) * h / 6.0 * m[i] + (3.0 * B * B - 1.0) * h / 6.0 * m[i + 1];
    fdd = A * m[i] + B * m[i + 1];
  }
};

}  // namespace

ReferenceTrajectory plan_spline(std::span<const Vec2> waypoints, double avg_speed, double Ts) {
  if (waypoints.size() < 2) throw std::invalid_argument("plan_spline: need at least 2 waypoints");
  if (!(avg_speed > 0.0)) throw std::invalid_argument("plan_spline: avg_speed must be > 0");
  if (!(Ts > 0.0)) throw std::invalid_argument("plan_spline: Ts must be > 0");

  Spline1D sx, sy;
  sx.t.resize(waypoints.size());
  sx.v.resize(waypoints.size());
  sy.t.resize(waypoints.size());
  sy.v.resize(waypoints.size());
  double tcur = 0.0;
  sx.t[0] = sy.t[0] = 0.0;
  sx.v[0] = waypoints[0].x;
  sy.v[0] = waypoints[0].y;
  for (std::size_t i = 1; i < waypoints.size(); ++i) {
    const double seg = (waypoints[i] - waypoints[i - 1]).norm();
    if (seg <= 0.0) throw std::invalid_argument("plan_spline: duplicate consecutive waypoints");
    tcur += seg / avg_speed;
    sx.t[i] = sy.t[i] = tcur;
    sx.v[i] = waypoints[i].x;
    sy.v[i] = waypoints[i].y;
  }
  sx.fit();
  sy.fit();

  ReferenceTrajectory traj;
  traj.Ts = Ts;
  const std::size_t ticks = static_cast<std::size_t>(std::floor(tcur / Ts)) + 1;
  traj.x.resize(ticks);
  traj.y.resize(ticks);
  traj.xd.resize(ticks);
  traj.yd.resize(ticks);
  traj.xdd.resize(ticks);
  traj.ydd.resize(ticks);
  for (std::size_t k = 0; k < ticks; ++k) {
    const double tau = static_cast<double>(k) * Ts;
    sx.eval(tau, traj.x[k], traj.xd[k], traj.xdd[k]);
    sy.eval(tau, traj.y[k], traj.yd[k], traj.ydd[k]);
  }
  return traj;
}

ReferenceTrajectory plan_line(const Vec2& start, double heading, double speed,
                              double Ts, std::size_t ticks) {
  ReferenceTrajectory traj;
  traj.Ts = Ts;
  const double cx = std::cos(heading), sy = std::sin(heading);
  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * Ts;
    traj.x.push_back(start.x + speed * t * cx);
    traj.y.push_back(start.y + speed * t * sy);
    traj.xd.push_back(speed * cx);
    traj.yd.push_back(speed * sy);
    traj.xdd.push_back(0.0);
    traj.ydd.push_back(0.0);
  }
  return traj;
}

ReferenceTrajectory plan_circle(const Vec2& center, double radius, double speed,
                                double Ts, std::size_t ticks, double phase) {
  if (!(radius > 0.0)) throw std::invalid_argument("plan_circle: radius must be > 0");
  ReferenceTrajectory traj;
  traj.Ts = Ts;
  const double w = speed / radius;
  for (std::size_t k = 0; k < ticks; ++k) {
    const double a = phase + w * static_cast<double>(k) * Ts;
    traj.x.push_back(center.x + radius * std::cos(a));
    traj.y.push_back(center.y + radius * std::sin(a));
    traj.xd.push_back(-radius * w * std::sin(a));
    traj.yd.push_back(radius * w * std::cos(a));
    traj.xdd.push_back(-radius * w * w * std::cos(a));
    traj.ydd.push_back(-radius * w * w * std::sin(a));
  }
  return traj;
}

ReferenceTrajectory plan_figure_eight(const Vec2& center, double lobe, double speed,
                                      double Ts, std::size_t ticks) {
  // Lemniscate-like curve x = L sin(wt), y = L sin(wt) cos(wt); w chosen so the
  // peak speed matches the requested one.
  if (!(lobe > 0.0)) throw std::invalid_argument("plan_figure_eight: lobe must be > 0");
  ReferenceTrajectory traj;
  traj.Ts = Ts;
  const double w = speed / lobe;
  for (std::size_t k = 0; k < ticks; ++k) {
    const double t = static_cast<double>(k) * Ts;
    const double s = std::sin(w * t), c = std::cos(w * t);
    traj.x.push_back(center.x + lobe * s);
    traj.y.push_back(center.y + lobe * s * c);
    traj.xd.push_back(lobe * w * c);
    traj.yd.push_back(lobe * w * (c * c - s * s));
    traj.xdd.push_back(-lobe * w * w * s);
    traj.ydd.push_back(-4.0 * lobe * w * w * s * c);
  }
  return traj;
}

ReferenceSample sample_reference(const ReferenceTrajectory& traj, std::size_t k, double b) {
  if (k >= traj.size()) throw std::out_of_range("sample_reference: tick out of range");
  const double xd = traj.xd[k], yd = traj.yd[k];
  const double v2 = xd * xd + yd * yd;
  if (!(v2 > 0.0)) throw std::runtime_error("singular reference: zero longitudinal speed");
  ReferenceSample s;
  s.v = std::sqrt(v2);
  s.omega = (traj.ydd[k] * xd - traj.xdd[k] * yd) / v2;
  s.pose = {traj.x[k], traj.y[k], std::atan2(yd, xd)};
  s.z = output_map(s.pose, b);
  s.u_ff = fl_input_inverse(s.pose.theta, {s.v, s.omega}, b);
  return s;
}

SafetyReport validate_safety(const ReferenceTrajectory& traj,
                             std::span<const Vec2> follower_positions,
                             const SafetyParams& s, double b) {
  SafetyReport report;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const double xd = traj.xd[k], yd = traj.yd[k];
    const double vr = std::hypot(xd, yd);
    if (vr <= s.min_ref_speed) {
      report.speed_violations.push_back({k, -1, vr});
    }
    if (!(vr > 0.0)) continue;
    const Pose pr{traj.x[k], traj.y[k], std::atan2(yd, xd)};
    const Vec2 zr = output_map(pr, b);
    for (std::size_t i = 0; i < follower_positions.size(); ++i) {
      const double d = (zr - follower_positions[i]).norm();
      if (d <= s.safe_distance) {
        report.distance_violations.push_back({k, static_cast<int>(i), d});
      }
    }
  }
  return report;
}

double max_ref_input_norm(const ReferenceTrajectory& traj, double b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < traj.size(); ++k) {
    const ReferenceSample s = sample_reference(traj, k, b);
    worst = std::max(worst, s.u_ff.norm());
  }
  return worst;
}

LeaderLogEntry delayed_ref(std::span<const LeaderLogEntry> buffer, std::size_t k,
                           std::size_t eta) {
  if (buffer.empty()) throw std::invalid_argument("delayed_ref: empty buffer");
  if (k < eta) {
    LeaderLogEntry initial = buffer.front();
    initial.input = {0.0, 0.0};
    return initial;
  }
  const std::size_t idx = k - eta;
  if (idx >= buffer.size()) throw std::out_of_range("delayed_ref: index beyond history");
  return buffer[idx];
}

}  // namespace stmpc
