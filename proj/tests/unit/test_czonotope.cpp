#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include "cvxset/czonotope.hpp"

#include <cmath>

using namespace cvxset;
using namespace testing;

namespace {

using CZ = ConstrainedZonotope;

CZ box(int n, double r = 1.0) { return CZ::rect(VectorXd::Constant(n, -r), VectorXd::Constant(n, r)); }
Polytope pbox(int n, double r = 1.0) { return Polytope::rect(VectorXd::Constant(n, -r), VectorXd::Constant(n, r)); }
Polytope pentagon() { return Polytope::from_vertices(pentagon_vertices()); }
CZ C1() { return CZ::from_polytope(Polytope::from_halfspaces(pentagon_A(), pentagon_b())); }

}  // namespace

TEST_CASE("czonotope: construction") {
  const auto R = box(2);
  CHECK(R.is_zonotope());
  CHECK(R.latent_dim() == 2);
  CHECK((R.G() - MatrixXd::Identity(2, 2)).norm() == 0.0);

  const auto point = CZ(MatrixXd(2, 0), vec({1, 2}));
  CHECK(point.contains(vec({1, 2})));
  CHECK_FALSE(point.contains(vec({1, 2.1})));

  const auto bad = CZ(MatrixXd::Identity(2, 2), vec({0, 0}), rows({{0, 0}}), vec({1}));
  CHECK(bad.is_empty());
  CHECK(throws_kind([] { CZ(MatrixXd::Identity(2, 2), vec({0, 0, 0})); }, ErrorKind::DimensionMismatch));
}

TEST_CASE("czonotope: lifted polytope conversion") {
  const auto C = C1();
  CHECK(C.latent_dim() == 7);
  CHECK(C.num_equalities() == 5);
  CHECK(set_equal(C, pentagon()));

  const auto H = Polytope::from_halfspaces(rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), vec({1, 1, 1, 1}));
  CHECK(set_equal(CZ::from_polytope(H), box(2)));

  const auto simplex = Polytope::from_vertices(MatrixXd::Identity(3, 3));
  CHECK(set_equal(CZ::from_polytope(simplex).to_polytope(), simplex));
  CHECK(throws_kind([] { CZ::from_polytope(Polytope::empty(2)); }, ErrorKind::EmptySet));
}

TEST_CASE("czonotope: conversion to a polytope") {
  CHECK(set_equal(box(2).to_polytope(), pbox(2)));
  CHECK(set_equal(C1().to_polytope(), pentagon()));
  const auto diamond = CZ::zonotope(rows({{1, 1}, {1, -1}}), vec({0, 0})).to_polytope();
  CHECK(diamond.num_vertices() == 4);
  CHECK(set_equal(diamond, Polytope::from_vertices(rows({{2, 0}, {-2, 0}, {0, 2}, {0, -2}}))));
  CHECK(throws_kind([] { CZ::zonotope(MatrixXd::Ones(2, 13), vec({0, 0})).to_polytope(); },
                    ErrorKind::LatentDimCap));
}

TEST_CASE("czonotope: affine maps and sums") {
  CHECK(set_equal(C1().affine_map(MatrixXd::Identity(2, 2)), C1()));
  CHECK(set_equal(box(2).affine_map(rows({{1, 0}})), box(1)));

  std::mt19937_64 rng(6);
  for (int k = 0; k < 10; ++k) {
    const MatrixXd M = oracle::gaussian_points(rng, 2, 2);
    CHECK(set_equal(C1().affine_map(M), pentagon().affine_map(M)));
  }

  CHECK(set_equal(minkowski_sum(box(2), CZ::rect(vec({-0.5, -2}), vec({0.5, 2}))),
                  CZ::rect(vec({-1.5, -3}), vec({1.5, 3}))));
  CHECK(set_equal(minkowski_sum(C1(), CZ::singleton(vec({0.5, 0}))), C1().translate(vec({0.5, 0}))));

  const auto Z = CZ::zonotope(oracle::gaussian_points(rng, 2, 3), oracle::gaussian_vector(rng, 2));
  const auto S = minkowski_sum(C1(), Z);
  CHECK(S.latent_dim() == 10);
  for (int k = 0; k < 50; ++k) {
    const VectorXd v = oracle::gaussian_vector(rng, 2);
    const double expect = oracle::support(pentagon_vertices(), v) + oracle::zonotope_support(Z.G(), Z.c(), v);
    CHECK(S.support(v).value == doctest::Approx(expect).epsilon(1e-8));
  }
}

TEST_CASE("czonotope: generalized intersection") {
  const auto cut = box(2).intersect_halfspaces(rows({{-1, -1}}), vec({0.5}));
  CHECK(set_equal(cut, pentagon()));
  CHECK(set_equal(cut, C1()));
  const auto Z = CZ::zonotope(rows({{1, 0.5}, {0, 1}}), vec({0.2, 0.3}));
  const auto ZZ = intersect(Z, Z);
  CHECK(ZZ.latent_dim() == 4);
  CHECK(set_equal(ZZ, Z));

  const auto seg = box(2).intersect_affine(rows({{1, 0}}), vec({0}));
  CHECK(set_equal(seg, Polytope::from_vertices(rows({{0, -1}, {0, 1}}))));

  const auto band = intersect(box(2), CZ::rect(vec({0}), vec({0.5})), rows({{1, 0}}));
  CHECK(set_equal(band, Polytope::rect(vec({0, -1}), vec({0.5, 1}))));
  CHECK(intersect(box(2), box(2).translate(vec({3, 0}))).is_empty());
}

TEST_CASE("czonotope: Pontryagin difference") {
  const auto seg = CZ::zonotope(rows({{0.4}, {0}}), vec({0, 0}));
  const auto exact = pontryagin_difference(box(2), seg, DifferenceStrategy::ExactRecursive);
  CHECK(set_equal(exact, CZ::rect(vec({-0.6, -1}), vec({0.6, 1}))));

  const auto scaled = pontryagin_difference(box(2), seg, DifferenceStrategy::ScaledInner);
  CHECK(set_equal(scaled, box(2, 0.6)));
  CHECK(contains_set(exact, scaled));
  CHECK_FALSE(contains_set(scaled, exact));

  const auto zero = CZ::zonotope(MatrixXd::Zero(2, 1), vec({0, 0}));
  for (auto s : {DifferenceStrategy::ExactRecursive, DifferenceStrategy::ScaledInner})
    CHECK(set_equal(pontryagin_difference(C1(), zero, s), C1()));

  DifferenceStrategy used{};
  pontryagin_difference(box(2), seg, DifferenceStrategy::Auto, &used);
  CHECK(used == DifferenceStrategy::ExactRecursive);
  pontryagin_difference(box(2), CZ::zonotope(0.01 * MatrixXd::Ones(2, 5), vec({0, 0})), DifferenceStrategy::Auto,
                        &used);
  CHECK(used == DifferenceStrategy::ScaledInner);

  CHECK(throws_kind([] { pontryagin_difference(box(2), C1()); }, ErrorKind::UnsupportedSubtrahend));
  CHECK(pontryagin_difference(box(2), box(2, 1.5), DifferenceStrategy::ExactRecursive).is_empty());

  const auto ball = Ellipsoid::ball(VectorXd::Zero(2), 0.3);
  const auto D = pontryagin_difference(box(2), ball);
  CHECK(set_equal(D, box(2, 0.7)));
}

TEST_CASE("czonotope: Pontryagin soundness on random instances") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 10; ++k) {
    const auto X = CZ::from_polytope(Polytope::from_vertices(oracle::gaussian_points(rng, 7, 2)));
    const MatrixXd Gs = 0.1 * oracle::gaussian_points(rng, 2, 2);
    const auto S = CZ::zonotope(Gs, VectorXd::Zero(2));
    const auto exact = pontryagin_difference(X, S, DifferenceStrategy::ExactRecursive);
    const auto scaled = pontryagin_difference(X, S, DifferenceStrategy::ScaledInner);
    const auto poly = pontryagin_difference(X.to_polytope(), S.to_polytope());
    if (poly.is_empty()) {
      CHECK(exact.is_empty());
      continue;
    }
    CHECK(set_equal(exact, poly));
    if (scaled.is_empty()) continue;
    CHECK(contains_set(exact, scaled));
    const MatrixXd W = S.to_polytope().vertices();
    const MatrixXd pts = scaled.to_polytope().vertices();
    for (int i = 0; i < pts.rows(); ++i)
      for (int j = 0; j < W.rows(); ++j) CHECK(X.contains((pts.row(i) + W.row(j)).transpose()));
  }
}

TEST_CASE("czonotope: support, containment and projection") {
  CHECK(box(2).support(vec({3, 4})).value == doctest::Approx(7.0));
  const auto Z = CZ::zonotope(rows({{1, 0.5}, {0, 1}}), vec({0.2, 0.3}));
  CHECK(Z.contains(vec({0.2, 0.3})));
  const auto r = box(2).project(vec({2, 0}));
  CHECK((r.point - vec({1, 0})).norm() < 1e-8);
  CHECK(r.distance == doctest::Approx(1.0));
  CHECK(box(2).project(vec({2, 2}), Norm::Linf).distance == doctest::Approx(1.0));

  std::mt19937_64 rng(9);
  for (int k = 0; k < 50; ++k) {
    const VectorXd v = oracle::gaussian_vector(rng, 2);
    CHECK(C1().support(v).value == doctest::Approx(oracle::support(pentagon_vertices(), v)).epsilon(1e-8));
  }
  CHECK(throws_kind([] { CZ::empty(2).support(vec({1, 0})); }, ErrorKind::EmptySet));
}

TEST_CASE("czonotope: containment of sets") {
  const auto C = C1();
  CHECK(contains_set(C, pentagon()));
  CHECK(contains_set(pentagon(), C));
  CHECK(contains_set(box(2), box(2, 0.5)));
  CHECK_FALSE(contains_set(box(2, 0.5), box(2)));
}

TEST_CASE("czonotope: interior point and centering") {
  CHECK((CZ::rect_centered(vec({1, -1}), vec({0.5, 2})).interior_point() - vec({1, -1})).norm() < 1e-8);
  CHECK(C1().contains(C1().interior_point()));
  CHECK((CZ::singleton(vec({4, 5})).interior_point() - vec({4, 5})).norm() < 1e-12);

  const auto rect = CZ::rect_centered(vec({1, -1}), vec({0.5, 2})).centering(CenteringKind::Chebyshev);
  CHECK(rect.radius == doctest::Approx(0.5).epsilon(1e-6));

  const auto cheb = C1().centering(CenteringKind::Chebyshev);
  CHECK(cheb.radius >= 0.6);
  // Bounded above by the exact Chebyshev radius of the pentagon.
  const double t = (std::sqrt(2.0) - 0.5) / (2 + std::sqrt(2.0));
  CHECK(cheb.radius <= 1 - t + 1e-8);

  const auto box_c = C1().centering(CenteringKind::CircumscribedRect);
  const auto box_p = pentagon().centering(CenteringKind::CircumscribedRect);
  CHECK((box_c.lower - box_p.lower).norm() < 1e-8);
  CHECK((box_c.upper - box_p.upper).norm() < 1e-8);
}

TEST_CASE("czonotope: projection, slicing, powers and area") {
  CHECK(set_equal(box(3).project_away({2}), box(2)));
  CHECK(set_equal(box(2).slice({0}, vec({0})), Polytope::from_vertices(rows({{0, -1}, {0, 1}}))));
  CHECK(set_equal(box(1).cartesian_power(2), box(2)));
  CHECK(throws_kind([] { box(2).project_away({2}); }, ErrorKind::BadDims));

  CHECK(box(2).volume_2d(200) == doctest::Approx(4.0).epsilon(0.025));
  CHECK(C1().volume_2d(200) == doctest::Approx(2.875).epsilon(0.035));
  CHECK(CZ::empty(2).volume_2d() == 0.0);
  CHECK(throws_kind([] { box(3).volume_2d(); }, ErrorKind::BadDimension));
}
