#include <benchmark/benchmark.h>

#include "cvxset/approximation.hpp"
#include "cvxset/czonotope.hpp"
#include "cvxset/polytope.hpp"

#include <random>

using namespace cvxset;

namespace {

MatrixXd random_points(int count, int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N;
  MatrixXd P(count, n);
  for (int i = 0; i < P.size(); ++i) P.data()[i] = N(rng);
  return P;
}

void BM_HullFromVertices(benchmark::State& state) {
  const MatrixXd V = random_points(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 3);
  for (auto _ : state) benchmark::DoNotOptimize(Polytope::from_vertices(V).to_hrep());
}
BENCHMARK(BM_HullFromVertices)->Args({20, 2})->Args({200, 2})->Args({30, 3})->Args({200, 3});

void BM_VerticesFromHalfspaces(benchmark::State& state) {
  const int n = static_cast<int>(state.range(1));
  MatrixXd A = random_points(static_cast<int>(state.range(0)), n, 4);
  A.rowwise().normalize();
  const VectorXd b = VectorXd::Ones(A.rows());
  const auto P = Polytope::from_halfspaces(A, b);
  for (auto _ : state) benchmark::DoNotOptimize(P.vertices());
}
BENCHMARK(BM_VerticesFromHalfspaces)->Args({20, 2})->Args({40, 3});

void BM_CzSupport(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  const auto Z = ConstrainedZonotope(random_points(2, 2 * m, 5), VectorXd::Zero(2), random_points(m / 2, 2 * m, 6),
                                     VectorXd::Zero(m / 2));
  const VectorXd v = Eigen::Vector2d(0.3, -1.0);
  for (auto _ : state) benchmark::DoNotOptimize(Z.support(v));
}
BENCHMARK(BM_CzSupport)->Arg(4)->Arg(16)->Arg(64);

void BM_SpreadPoints(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(spread_points(3, static_cast<int>(state.range(0))));
}
BENCHMARK(BM_SpreadPoints)->Arg(5)->Arg(20);

}  // namespace
