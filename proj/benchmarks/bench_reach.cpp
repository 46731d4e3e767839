#include <benchmark/benchmark.h>

#include "cvxset/io/problems.hpp"
#include "cvxset/reach.hpp"

using namespace cvxset;

namespace {

void BM_RcPolytope(benchmark::State& state) {
  const RcProblem p = io::double_integrator_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rc_set(p, Representation::Polytope));
}
BENCHMARK(BM_RcPolytope)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_RcCZonotope(benchmark::State& state) {
  const RcProblem p = io::double_integrator_problem(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(rc_set(p, Representation::CZonotope));
}
BENCHMARK(BM_RcCZonotope)->Arg(10)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_ForwardTrajectory(benchmark::State& state) {
  const TrajProblem p = io::robot_problem();
  for (auto _ : state) benchmark::DoNotOptimize(forward_trajectory_set(p));
}
BENCHMARK(BM_ForwardTrajectory)->Unit(benchmark::kMillisecond);

}  // namespace
