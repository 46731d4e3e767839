#include <benchmark/benchmark.h>

#include "cvxset/lp.hpp"
#include "cvxset/qp.hpp"

#include <random>

using namespace cvxset;
using namespace cvxset::solver;

namespace {

MatrixXd random_matrix(std::mt19937_64& rng, int r, int c) {
  std::normal_distribution<double> N;
  MatrixXd M(r, c);
  for (int i = 0; i < M.size(); ++i) M.data()[i] = N(rng);
  return M;
}

void BM_LpRandom(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(1);
  LpProblem p;
  p.A_ub = random_matrix(rng, 4 * n, n);
  p.b_ub = VectorXd::Ones(4 * n);
  p.c = random_matrix(rng, n, 1);
  p.lower = VectorXd::Constant(n, -10);
  p.upper = VectorXd::Constant(n, 10);
  for (auto _ : state) benchmark::DoNotOptimize(solve_lp(p));
}
BENCHMARK(BM_LpRandom)->Arg(2)->Arg(8)->Arg(32)->Arg(64);

void BM_QpProjection(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(2);
  QpProblem p;
  p.Q = 2 * MatrixXd::Identity(n, n);
  p.q = random_matrix(rng, n, 1);
  p.A_ub = random_matrix(rng, 3 * n, n);
  p.b_ub = VectorXd::Ones(3 * n);
  for (auto _ : state) benchmark::DoNotOptimize(solve_qp(p));
}
BENCHMARK(BM_QpProjection)->Arg(2)->Arg(8)->Arg(32);

}  // namespace
