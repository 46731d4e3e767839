#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include "cvxset/approximation.hpp"

#include <cmath>
#include <numbers>

using namespace cvxset;
using namespace testing;

TEST_CASE("approximation: direction counts") {
  const auto D0 = spread_points(2, 0);
  CHECK(D0.rows() == 4);
  CHECK((D0.cwiseAbs().rowwise().sum().array() == 1.0).all());
  CHECK(spread_points(3, 20).rows() == 166);
  const auto D1 = spread_points(2, 1);
  CHECK(D1.rows() == 8);
  CHECK(min_pairwise_angle(D1) > 0);
}

TEST_CASE("approximation: generated directions are unit vectors and deterministic") {
  const auto a = spread_points(3, 5);
  CHECK((a.rowwise().norm().array() - 1.0).abs().maxCoeff() < 1e-9);
  CHECK(a == spread_points(3, 5));
  for (int i = 0; i < 3; ++i) {
    CHECK((a.row(2 * i).transpose() - VectorXd::Unit(3, i)).norm() == 0.0);
    CHECK((a.row(2 * i + 1).transpose() + VectorXd::Unit(3, i)).norm() == 0.0);
  }
  CHECK(&default_directions(2) == &default_directions(2));
  CHECK(default_directions(2).rows() == 4 + 4 * kDefaultSpreadCount);
}

TEST_CASE("approximation: outer polytopes") {
  const auto box = ConstrainedZonotope::rect(vec({-1, -2}), vec({1, 2}));
  const MatrixXd axes = spread_points(2, 0);
  CHECK(set_equal(outer_polytope(box, axes), Polytope::rect(vec({-1, -2}), vec({1, 2}))));

  const auto ball = Ellipsoid::ball(VectorXd::Zero(3), 1.0);
  const auto outer = outer_polytope(ball, spread_points(3, 20));
  CHECK(contains_set(outer, ball));
  CHECK(outer.volume() / (4 * std::numbers::pi / 3) <= 1.1);

  const auto disc = Ellipsoid::ball(VectorXd::Zero(2), 1.0);
  const auto ring = outer_polytope(disc, spread_points(2, 20));
  CHECK(ring.volume() / std::numbers::pi <= 1.1);

  const auto P = Polytope::from_halfspaces(pentagon_A(), pentagon_b());
  MatrixXd normals = pentagon_A();
  normals.rowwise().normalize();
  CHECK(set_equal(outer_polytope(P, normals), P));
}

TEST_CASE("approximation: inner polytopes") {
  const auto C1 = ConstrainedZonotope::from_polytope(Polytope::from_halfspaces(pentagon_A(), pentagon_b()));
  MatrixXd normals = pentagon_A();
  normals.rowwise().normalize();
  // Generic directions near each facet normal pick up every vertex.
  MatrixXd dirs(10, 2);
  for (int i = 0; i < 5; ++i) {
    const VectorXd n = normals.row(i).transpose();
    const VectorXd t = vec({-n(1), n(0)});
    dirs.row(2 * i) = (n + 0.1 * t).normalized().transpose();
    dirs.row(2 * i + 1) = (n - 0.1 * t).normalized().transpose();
  }
  CHECK(set_equal(inner_polytope(C1, dirs), Polytope::from_vertices(pentagon_vertices())));

  const auto disc = Ellipsoid::ball(VectorXd::Zero(2), 1.0);
  const auto diamond = inner_polytope(disc, spread_points(2, 0));
  CHECK(set_equal(diamond, Polytope::from_vertices(rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}))));

  const auto inner = inner_polytope(C1, default_directions(2));
  const MatrixXd V = inner.vertices();
  for (int i = 0; i < V.rows(); ++i) CHECK(C1.contains(V.row(i).transpose()));
}

TEST_CASE("approximation: gap shrinks with more directions") {
  const auto disc = Ellipsoid::ball(VectorXd::Zero(2), 1.0);
  double last = 1e9;
  for (int D : {0, 1, 5, 20}) {
    const auto dirs = spread_points(2, D);
    const double gap = outer_polytope(disc, dirs).volume() - inner_polytope(disc, dirs).volume();
    CHECK(gap <= last + 1e-12);
    last = gap;
  }
}
