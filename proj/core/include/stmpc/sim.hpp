#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stmpc/platoon.hpp"
#include "stmpc/scenario.hpp"

namespace stmpc {

struct AgentMetrics {
  int agent = 0;
  double iae = 0.0;
  double max_err_after_converge = -1.0;  // -1 when the agent never reached j=0
  double min_dist_to_pred = -1.0;        // -1 for the leader
  std::size_t final_eta = 0;
  double max_abs_wheel = 0.0;
};

struct RunMetrics {
  std::vector<AgentMetrics> agents;
};

struct SimResult {
  std::vector<LogRow> log;
  RunMetrics metrics;
};

/// Deterministic closed-loop run: same scenario, same bytes.
/// Throws with a named check on startup failure and with tick/agent context on
/// a mid-run membership failure.
SimResult run_simulation(const Scenario& s);

/// Rectangle-rule integral of the geometric-center tracking error.
double compute_iae(std::span<const LogRow> log, int agent, double Ts);

RunMetrics compute_metrics(std::span<const LogRow> log, double Ts);

std::string log_to_csv(std::span<const LogRow> log);
std::string metrics_to_csv(const RunMetrics& m);
std::vector<LogRow> log_from_csv(std::istream& in);

/// Fixed-format number rendering used for every CSV cell.
std::string csv_number(double v);

}  // namespace stmpc
