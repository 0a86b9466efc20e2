#include "stmpc/scenario.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "stmpc/constraints.hpp"

namespace stmpc {

namespace {

using nlohmann::json;

Vec2 parse_vec2(const json& j) {
  if (!j.is_array() || j.size() != 2) throw std::invalid_argument("scenario: expected [x, y]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Pose parse_pose(const json& j) {
  if (!j.is_array() || j.size() != 3) throw std::invalid_argument("scenario: expected [x, y, theta]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

Scenario Scenario::from_json_text(const std::string& text) {
  json j = json::parse(text);
  Scenario s;
  s.schema = j.value("schema", 1);
  if (s.schema != 1) throw std::invalid_argument("scenario: unsupported schema version");

  const json& r = j.at("robot");
  s.robot.wheel_radius = r.at("wheel_radius").get<double>();
  s.robot.axle_length = r.at("axle_length").get<double>();
  if (r.contains("max_wheel_speed_steps")) {
    s.robot.max_wheel_speed = r.at("max_wheel_speed_steps").get<double>() * kRadPerStep;
  } else {
    s.robot.max_wheel_speed = r.at("max_wheel_speed").get<double>();
  }
  s.robot.displacement = r.at("displacement").get<double>();
  s.robot.sample_time = r.at("sample_time").get<double>();
  s.robot.validate();

  for (const json& a : j.at("agents")) {
    AgentConfig cfg;
    cfg.initial_pose = parse_pose(a.at("pose"));
    cfg.desired_delay = a.value("desired_delay", std::size_t{0});
    s.agents.push_back(cfg);
  }
  if (s.agents.empty()) throw std::invalid_argument("scenario: no agents");

  const json& t = j.at("trajectory");
  s.trajectory.type = t.at("type").get<std::string>();
  if (s.trajectory.type == "spline") {
    for (const json& w : t.at("waypoints")) s.trajectory.waypoints.push_back(parse_vec2(w));
    s.trajectory.avg_speed = t.at("avg_speed").get<double>();
  } else if (s.trajectory.type == "line") {
    s.trajectory.start = parse_vec2(t.at("start"));
    s.trajectory.heading = t.at("heading").get<double>();
    s.trajectory.speed = t.at("speed").get<double>();
  } else if (s.trajectory.type == "circle") {
    s.trajectory.center = parse_vec2(t.at("center"));
    s.trajectory.radius = t.at("radius").get<double>();
    s.trajectory.speed = t.at("speed").get<double>();
    s.trajectory.phase = t.value("phase", 0.0);
  } else if (s.trajectory.type == "figure8") {
    s.trajectory.center = parse_vec2(t.at("center"));
    s.trajectory.lobe = t.at("lobe").get<double>();
    s.trajectory.speed = t.at("speed").get<double>();
  } else {
    throw std::invalid_argument("scenario: unknown trajectory type '" + s.trajectory.type + "'");
  }

  const json& l = j.at("leader");
  s.leader_input_radius = l.at("r_u").get<double>();
  s.leader_disturbance_radius = l.at("r_d_pos").get<double>();
  s.follower_input_disturbance =
      j.contains("follower") ? j["follower"].value("r_d_input", s.leader_input_radius)
                             : s.leader_input_radius;
  s.family_size = j.value("family_size", std::size_t{1000});

  const json& sf = j.at("safety");
  s.safety.safe_distance = sf.at("safe_distance").get<double>();
  s.safety.min_ref_speed = sf.at("min_ref_speed").get<double>();
  s.body_radius = j.value("body_radius", 0.0);
  s.ticks = j.at("ticks").get<std::size_t>();
  return s;
}

Scenario Scenario::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("scenario: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str());
}

ReferenceTrajectory Scenario::build_trajectory() const {
  const double Ts = robot.sample_time;
  if (trajectory.type == "spline") {
    return plan_spline(trajectory.waypoints, trajectory.avg_speed, Ts);
  }
  if (trajectory.type == "line") {
    return plan_line(trajectory.start, trajectory.heading, trajectory.speed, Ts, ticks);
  }
  if (trajectory.type == "circle") {
    return plan_circle(trajectory.center, trajectory.radius, trajectory.speed, Ts, ticks,
                       trajectory.phase);
  }
  return plan_figure_eight(trajectory.center, trajectory.lobe, trajectory.speed, Ts, ticks);
}

std::vector<CheckResult> run_checks(const Scenario& s) {
  std::vector<CheckResult> results;
  const double Ts = s.robot.sample_time;
  const double b = s.robot.displacement;

  ReferenceTrajectory traj;
  try {
    traj = s.build_trajectory();
  } catch (const std::exception& e) {
    results.push_back({"TRAJECTORY", false, e.what()});
    return results;
  }
  results.push_back({"TRAJECTORY", true, ""});
  {
    std::ostringstream d;
    const bool ok = traj.size() >= s.ticks;
    d << "trajectory ticks " << traj.size() << " vs run ticks " << s.ticks;
    results.push_back({"TRAJECTORY_LENGTH", ok, d.str()});
  }

  // Assumption: initial distances from the leader increase with the index.
  {
    bool ok = true;
    std::ostringstream d;
    const Vec2 z0 = output_map(s.agents[0].initial_pose, b);
    double prev = 0.0;
    for (std::size_t i = 1; i < s.agents.size(); ++i) {
      const double dist = (output_map(s.agents[i].initial_pose, b) - z0).norm_sq();
      if (i > 1 && dist <= prev) {
        ok = false;
        d << "i=" << i;
        break;
      }
      prev = dist;
    }
    results.push_back({"ASSUMPTION1", ok, d.str()});
  }

  // Planner safety against the followers' initial positions.
  {
    std::vector<Vec2> followers;
    for (std::size_t i = 1; i < s.agents.size(); ++i) {
      followers.push_back(output_map(s.agents[i].initial_pose, b));
    }
    const SafetyReport report = validate_safety(traj, followers, s.safety, b);
    std::ostringstream d;
    if (!report.distance_violations.empty()) {
      const auto& v = report.distance_violations.front();
      d << "first violation k=" << v.tick << " i=" << v.follower + 1 << " dist=" << v.value;
    }
    results.push_back({"PLANNER_SAFETY", report.distance_violations.empty(), d.str()});
    std::ostringstream ds;
    if (!report.speed_violations.empty()) {
      ds << "first violation k=" << report.speed_violations.front().tick;
    }
    results.push_back({"REFERENCE_SPEED", report.speed_violations.empty(), ds.str()});
  }

  const double r_u_inner = inner_radius(s.robot);

  // Disturbance-bound audit: the leader's feed-forward must fit its disturbance ball.
  {
    const double worst = Ts * max_ref_input_norm(traj, b);
    std::ostringstream d;
    d << "Ts*max|u_r| = " << worst << " vs r_d_pos = " << s.leader_disturbance_radius;
    results.push_back({"DISTURBANCE_BOUND", worst <= s.leader_disturbance_radius, d.str()});
  }

  // Family growth conditions.
  {
    const double leader_growth = Ts * s.leader_input_radius - s.leader_disturbance_radius;
    std::ostringstream d;
    d << "leader growth per step = " << leader_growth;
    results.push_back({"LEADER_FAMILY_GROWTH", leader_growth > 0.0, d.str()});
  }
  {
    const double follower_growth = Ts * r_u_inner - Ts * s.follower_input_disturbance;
    std::ostringstream d;
    d << "follower growth per step = " << follower_growth;
    results.push_back({"FOLLOWER_FAMILY_GROWTH", follower_growth > 0.0, d.str()});
  }

  // Input nesting: leader ball inside the worst-case ball, and the disturbance
  // inputs strictly inside the respective input balls.
  {
    std::ostringstream d;
    d << "r_u_leader = " << s.leader_input_radius << " vs r_u_inner = " << r_u_inner;
    results.push_back({"LEADER_INPUT_NESTING", s.leader_input_radius < r_u_inner, d.str()});
  }
  {
    const double r_d_input_leader = s.leader_disturbance_radius / Ts;
    std::ostringstream d;
    d << "r_d_input = " << r_d_input_leader << " vs r_u = " << s.leader_input_radius;
    results.push_back({"LEADER_DISTURBANCE_NESTING",
                       r_d_input_leader < s.leader_input_radius, d.str()});
  }
  {
    std::ostringstream d;
    d << "r_d_input = " << s.follower_input_disturbance << " vs r_u_inner = " << r_u_inner;
    results.push_back({"FOLLOWER_DISTURBANCE_NESTING",
                       s.follower_input_disturbance < r_u_inner, d.str()});
  }
  return results;
}

}  // namespace stmpc
