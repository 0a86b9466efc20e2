#include "stmpc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "stmpc/constraints.hpp"

namespace stmpc {

namespace {

const char* mode_name(ControlMode m) {
  switch (m) {
    case ControlMode::RoscQp: return "ROSC_QP";
    case ControlMode::RciTerminal: return "RCI_TERMINAL";
    case ControlMode::Stopped: return "STOPPED";
  }
  return "?";
}

ControlMode mode_from_name(const std::string& s) {
  if (s == "ROSC_QP") return ControlMode::RoscQp;
  if (s == "RCI_TERMINAL") return ControlMode::RciTerminal;
  if (s == "STOPPED") return ControlMode::Stopped;
  throw std::invalid_argument("unknown control mode '" + s + "'");
}

constexpr char kLogHeader[] =
    "k,i,x,y,theta,z1,z2,zr1,zr2,err_norm,j,mode,u1,u2,v,omega,wR,wL,eta,"
    "gate_fired,min_dist_to_pred,xr,yr";

}  // namespace

std::string csv_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

SimResult run_simulation(const Scenario& s) {
  const auto checks = run_checks(s);
  for (const CheckResult& c : checks) {
    if (!c.passed) {
      throw std::runtime_error("startup check failed: " + c.name +
                               (c.detail.empty() ? "" : " (" + c.detail + ")"));
    }
  }

  const InputConstraintSuite suite = InputConstraintSuite::build(s.robot);
  const double Ts = s.robot.sample_time;
  const ROSCFamily leader_family = ROSCFamily::build(
      DisturbanceModel::from_position_radius(s.leader_disturbance_radius, Ts),
      s.leader_input_radius, Ts, s.family_size);
  const ROSCFamily follower_family = ROSCFamily::build(
      DisturbanceModel::from_input_bound(s.follower_input_disturbance, Ts),
      suite.r_u_inner, Ts, s.family_size);

  Formation formation(s.robot, suite, s.build_trajectory(), s.agents, leader_family,
                      follower_family, s.leader_input_radius, s.body_radius);

  SimResult result;
  result.log.reserve(s.ticks * s.agents.size());
  for (std::size_t k = 0; k < s.ticks; ++k) {
    auto rows = formation.step(k);
    result.log.insert(result.log.end(), rows.begin(), rows.end());
  }
  result.metrics = compute_metrics(result.log, Ts);
  return result;
}

double compute_iae(std::span<const LogRow> log, int agent, double Ts) {
  double sum = 0.0;
  for (const LogRow& r : log) {
    if (r.agent != agent) continue;
    sum += std::hypot(r.x_ref - r.pose.x, r.y_ref - r.pose.y) * Ts;
  }
  return sum;
}

RunMetrics compute_metrics(std::span<const LogRow> log, double Ts) {
  int max_agent = -1;
  for (const LogRow& r : log) max_agent = std::max(max_agent, r.agent);

  RunMetrics m;
  for (int i = 0; i <= max_agent; ++i) {
    AgentMetrics a;
    a.agent = i;
    a.iae = compute_iae(log, i, Ts);
    bool converged = false;
    double min_dist = std::numeric_limits<double>::infinity();
    for (const LogRow& r : log) {
      if (r.agent != i) continue;
      if (!converged && r.index == 0) {
        converged = true;
        a.max_err_after_converge = 0.0;
      }
      if (converged) {
        a.max_err_after_converge = std::max(a.max_err_after_converge, r.err_norm);
      }
      if (i > 0) min_dist = std::min(min_dist, r.min_dist_to_pred);
      a.final_eta = r.eta;
      a.max_abs_wheel = std::max(
          {a.max_abs_wheel, std::abs(r.wheel_right), std::abs(r.wheel_left)});
    }
    if (i > 0 && std::isfinite(min_dist)) a.min_dist_to_pred = min_dist;
    m.agents.push_back(a);
  }
  return m;
}

std::string log_to_csv(std::span<const LogRow> log) {
  std::string out;
  out.reserve(log.size() * 160 + 256);
  out += kLogHeader;
  out += '\n';
  for (const LogRow& r : log) {
    out += std::to_string(r.tick);
    out += ',';
    out += std::to_string(r.agent);
    for (double v : {r.pose.x, r.pose.y, r.pose.theta, r.z.x, r.z.y, r.z_ref.x,
                     r.z_ref.y, r.err_norm}) {
      out += ',';
      out += csv_number(v);
    }
    out += ',';
    out += std::to_string(r.index);
    out += ',';
    out += mode_name(r.mode);
    for (double v : {r.u.x, r.u.y, r.v, r.omega, r.wheel_right, r.wheel_left}) {
      out += ',';
      out += csv_number(v);
    }
    out += ',';
    out += std::to_string(r.eta);
    out += ',';
    out += r.gate_fired ? '1' : '0';
    for (double v : {r.min_dist_to_pred, r.x_ref, r.y_ref}) {
      out += ',';
      out += csv_number(v);
    }
    out += '\n';
  }
  return out;
}

std::string metrics_to_csv(const RunMetrics& m) {
  std::string out = "i,iae,max_err_after_converge,min_dist_to_pred,final_eta,max_abs_wheel\n";
  for (const AgentMetrics& a : m.agents) {
    out += std::to_string(a.agent);
    out += ',';
    out += csv_number(a.iae);
    out += ',';
    out += csv_number(a.max_err_after_converge);
    out += ',';
    out += csv_number(a.min_dist_to_pred);
    out += ',';
    out += std::to_string(a.final_eta);
    out += ',';
    out += csv_number(a.max_abs_wheel);
    out += '\n';
  }
  return out;
}

std::vector<LogRow> log_from_csv(std::istream& in) {
  std::vector<LogRow> rows;
  std::string line;
  if (!std::getline(in, line)) return rows;
  if (line != kLogHeader) throw std::invalid_argument("log csv: unexpected header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != 23) throw std::invalid_argument("log csv: malformed row");
    LogRow r;
    r.tick = std::stoul(cells[0]);
    r.agent = std::stoi(cells[1]);
    r.pose = {std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])};
    r.z = {std::stod(cells[5]), std::stod(cells[6])};
    r.z_ref = {std::stod(cells[7]), std::stod(cells[8])};
    r.err_norm = std::stod(cells[9]);
    r.index = std::stoi(cells[10]);
    r.mode = mode_from_name(cells[11]);
    r.u = {std::stod(cells[12]), std::stod(cells[13])};
    r.v = std::stod(cells[14]);
    r.omega = std::stod(cells[15]);
    r.wheel_right = std::stod(cells[16]);
    r.wheel_left = std::stod(cells[17]);
    r.eta = std::stoul(cells[18]);
    r.gate_fired = cells[19] == "1";
    r.min_dist_to_pred = std::stod(cells[20]);
    r.x_ref = std::stod(cells[21]);
    r.y_ref = std::stod(cells[22]);
    rows.push_back(r);
  }
  return rows;
}

}  // namespace stmpc
