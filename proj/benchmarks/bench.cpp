#include <benchmark/benchmark.h>

#include <random>

#include "stmpc/constraints.hpp"
#include "stmpc/platoon.hpp"
#include "stmpc/qp.hpp"
#include "stmpc/reference.hpp"
#include "stmpc/stmpc.hpp"

namespace {

using namespace stmpc;

const RobotParams kKhepera{0.021, 0.1047, 22.5833, 0.1, 0.15};

void BM_BuildHTheta(benchmark::State& state) {
  double theta = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_H_theta(theta, kKhepera));
    theta += 0.01;
  }
}
BENCHMARK(BM_BuildHTheta);

void BM_MembershipIndex(benchmark::State& state) {
  const ROSCFamily f = ROSCFamily::build(
      DisturbanceModel::from_position_radius(0.0507, 0.15), 0.40, 0.15, 1000);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-2.0, 2.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.membership_index({pos(rng), pos(rng)}));
  }
}
BENCHMARK(BM_MembershipIndex);

void BM_QpSolve(benchmark::State& state) {
  const InputConstraintSuite suite = InputConstraintSuite::build(kKhepera);
  const Polytope2 U = build_H_theta(0.7, kKhepera);
  const std::vector<Ball2> balls{{{0, 0}, suite.r_u_outer}, {{0.2, -0.1}, 0.4}};
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(-1.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_qp2({pos(rng), pos(rng)}, balls, U.rows));
  }
}
BENCHMARK(BM_QpSolve);

void BM_FormationTick(benchmark::State& state) {
  const InputConstraintSuite suite = InputConstraintSuite::build(kKhepera);
  const ROSCFamily lf = ROSCFamily::build(
      DisturbanceModel::from_position_radius(0.0507, 0.15), 0.40, 0.15, 1000);
  const ROSCFamily ff = ROSCFamily::build(DisturbanceModel::from_input_bound(0.40, 0.15),
                                          suite.r_u_inner, 0.15, 1000);
  for (auto _ : state) {
    state.PauseTiming();
    Formation f(kKhepera, suite, plan_line({0, 0}, 0.0, 0.32, 0.15, 64),
                {{{0, 0, 0}, 0}, {{-0.6, 0, 0}, 4}, {{-1.2, 0, 0}, 8}}, lf, ff, 0.40, 0.05);
    state.ResumeTiming();
    for (std::size_t k = 0; k < 64; ++k) benchmark::DoNotOptimize(f.step(k));
  }
}
BENCHMARK(BM_FormationTick);

}  // namespace

BENCHMARK_MAIN();
