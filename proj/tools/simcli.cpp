// Command-line front end: scenario validation, deterministic simulation runs,
// constraint/family dumps, and plot-ready CSV extraction.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "stmpc/constraints.hpp"
#include "stmpc/scenario.hpp"
#include "stmpc/sim.hpp"
#include "stmpc/stmpc.hpp"

namespace fs = std::filesystem;
using namespace stmpc;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitValidation = 2;
constexpr int kExitRuntime = 3;

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

int cmd_check(const std::string& scenario_path) {
  const Scenario s = Scenario::from_file(scenario_path);
  const auto checks = run_checks(s);
  bool all_ok = true;
  for (const CheckResult& c : checks) {
    std::cout << c.name << ' ' << (c.passed ? "PASS" : "FAIL");
    if (!c.detail.empty()) std::cout << ' ' << c.detail;
    std::cout << '\n';
    all_ok = all_ok && c.passed;
  }
  return all_ok ? kExitOk : kExitValidation;
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 long ticks_override) {
  Scenario s = Scenario::from_file(scenario_path);
  if (ticks_override >= 0) s.ticks = static_cast<std::size_t>(ticks_override);
  const SimResult result = run_simulation(s);
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "log.csv", log_to_csv(result.log));
  write_file(fs::path(out_dir) / "metrics.csv", metrics_to_csv(result.metrics));
  std::cout << "wrote " << result.log.size() << " log rows to " << out_dir << '\n';
  return kExitOk;
}

int cmd_sets(const std::string& scenario_path, const std::string& out_dir) {
  const Scenario s = Scenario::from_file(scenario_path);
  const InputConstraintSuite suite = InputConstraintSuite::build(s.robot);
  const double Ts = s.robot.sample_time;
  fs::create_directories(out_dir);

  {
    std::string out = "name,value\n";
    out += "r_u_inner," + csv_number(suite.r_u_inner) + '\n';
    out += "r_u_outer," + csv_number(suite.r_u_outer) + '\n';
    write_file(fs::path(out_dir) / "radii.csv", out);
  }
  {
    std::string out = "theta_deg,row,h1,h2\n";
    for (int deg = 0; deg < 360; ++deg) {
      const double theta = deg * M_PI / 180.0;
      const Polytope2 P = build_H_theta(theta, s.robot);
      for (std::size_t r = 0; r < P.rows.size(); ++r) {
        out += std::to_string(deg) + ',' + std::to_string(r) + ',' +
               csv_number(P.rows[r].x) + ',' + csv_number(P.rows[r].y) + '\n';
      }
    }
    write_file(fs::path(out_dir) / "h_theta.csv", out);
  }
  {
    const ROSCFamily leader = ROSCFamily::build(
        DisturbanceModel::from_position_radius(s.leader_disturbance_radius, Ts),
        s.leader_input_radius, Ts, s.family_size);
    const ROSCFamily follower = ROSCFamily::build(
        DisturbanceModel::from_input_bound(s.follower_input_disturbance, Ts),
        suite.r_u_inner, Ts, s.family_size);
    std::string out = "j,leader_radius,follower_radius\n";
    for (std::size_t j = 0; j < leader.radii.size(); ++j) {
      out += std::to_string(j) + ',' + csv_number(leader.radii[j]) + ',' +
             csv_number(follower.radii[j]) + '\n';
    }
    write_file(fs::path(out_dir) / "rosc_radii.csv", out);
  }
  std::cout << "wrote set dumps to " << out_dir << '\n';
  return kExitOk;
}

int cmd_plotdata(const std::string& run_dir) {
  std::ifstream in(fs::path(run_dir) / "log.csv", std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + run_dir + "/log.csv");
  const auto rows = log_from_csv(in);

  std::map<int, std::string> traj, wheels, err;
  for (const LogRow& r : rows) {
    if (!traj.count(r.agent)) {
      traj[r.agent] = "k,x,y,xr,yr\n";
      wheels[r.agent] = "k,wR,wL\n";
      err[r.agent] = "k,err_norm\n";
    }
    const std::string k = std::to_string(r.tick);
    traj[r.agent] += k + ',' + csv_number(r.pose.x) + ',' + csv_number(r.pose.y) + ',' +
                     csv_number(r.x_ref) + ',' + csv_number(r.y_ref) + '\n';
    wheels[r.agent] += k + ',' + csv_number(r.wheel_right) + ',' +
                       csv_number(r.wheel_left) + '\n';
    err[r.agent] += k + ',' + csv_number(r.err_norm) + '\n';
  }
  for (const auto& [agent, content] : traj) {
    write_file(fs::path(run_dir) / ("trajectory_" + std::to_string(agent) + ".csv"), content);
  }
  for (const auto& [agent, content] : wheels) {
    write_file(fs::path(run_dir) / ("wheels_" + std::to_string(agent) + ".csv"), content);
  }
  for (const auto& [agent, content] : err) {
    write_file(fs::path(run_dir) / ("error_" + std::to_string(agent) + ".csv"), content);
  }
  std::cout << "wrote plot data for " << traj.size() << " agents to " << run_dir << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Leader-follower platooning simulator for input-constrained "
               "differential-drive robots"};
  app.require_subcommand(1);

  std::string scenario_path, out_dir, run_dir;
  long ticks_override = -1;
  long seed = 0;

  auto* check = app.add_subcommand("check", "Run all startup validations");
  check->add_option("scenario", scenario_path, "Scenario JSON file")->required();

  auto* simulate = app.add_subcommand("simulate", "Run a deterministic closed-loop simulation");
  simulate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  simulate->add_option("--out", out_dir, "Output directory")->required();
  simulate->add_option("--ticks", ticks_override, "Override the scenario tick count");
  simulate->add_option("--seed", seed,
                       "Seed for randomized test scenarios; control math ignores it");

  auto* sets = app.add_subcommand("sets", "Dump constraint radii, H(theta) rows, and ROSC radii");
  sets->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  sets->add_option("--out", out_dir, "Output directory")->required();

  auto* plotdata = app.add_subcommand("plotdata", "Derive per-agent plot CSVs from a run directory");
  plotdata->add_option("dir", run_dir, "Directory containing log.csv")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (check->parsed()) return cmd_check(scenario_path);
    if (simulate->parsed()) return cmd_simulate(scenario_path, out_dir, ticks_override);
    if (sets->parsed()) return cmd_sets(scenario_path, out_dir);
    return cmd_plotdata(run_dir);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: validation: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << '\n';
    return what.rfind("startup check failed", 0) == 0 ? kExitValidation : kExitRuntime;
  }
}
