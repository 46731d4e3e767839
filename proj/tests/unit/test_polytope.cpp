#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include "cvxset/czonotope.hpp"
#include "cvxset/ellipsoid.hpp"
#include "cvxset/polytope.hpp"

#include <cmath>
#include <numbers>

using namespace cvxset;
using namespace testing;

namespace {

Polytope pentagon() { return Polytope::from_vertices(pentagon_vertices()); }
Polytope box(int n, double r = 1.0) { return Polytope::rect(VectorXd::Constant(n, -r), VectorXd::Constant(n, r)); }

}  // namespace

TEST_CASE("polytope: construction") {
  SUBCASE("vertices keep only extreme points") {
    const auto P = Polytope::from_vertices(rows({{0, 0}, {1, 0}, {1, 1}, {0, 1}, {0.5, 0.5}, {1, 1}})).reduce();
    CHECK(P.num_vertices() == 4);
  }
  SUBCASE("unbounded halfspaces are rejected") {
    CHECK(throws_kind([] { Polytope::from_halfspaces(rows({{1, 0}}), vec({1})); }, ErrorKind::UnboundedPolytope));
  }
  SUBCASE("infeasible halfspaces give an empty polytope") {
    const auto P = Polytope::from_halfspaces(rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}), vec({-1, 0, 1, 1}));
    CHECK(P.is_empty());
    CHECK_FALSE(P.contains(vec({0, 0})));
    CHECK(P.volume() == 0.0);
  }
  SUBCASE("mismatched sizes throw") {
    CHECK(throws_kind([] { Polytope::from_halfspaces(rows({{1, 0}}), vec({1, 2})); }, ErrorKind::DimensionMismatch));
  }
}

TEST_CASE("polytope: halfspace enumeration") {
  const auto H = pentagon().to_hrep();
  CHECK(H.A().rows() == 5);
  CHECK(H.Ae().rows() == 0);
  CHECK(oracle::rows_inside(pentagon_vertices(), H.A(), H.b(), 1e-9));

  SUBCASE("segment yields an equality row") {
    const auto S = Polytope::from_vertices(rows({{0, 0}, {1, 1}})).to_hrep();
    CHECK(S.Ae().rows() == 1);
    CHECK(S.A().rows() == 2);
    CHECK(S.contains(vec({0.5, 0.5})));
    CHECK_FALSE(S.contains(vec({0.5, 0.4})));
  }
  SUBCASE("simplex round trip") {
    const MatrixXd V = MatrixXd::Identity(3, 3);
    const auto P = Polytope::from_vertices(V);
    CHECK(set_equal(P.to_hrep(), P));
  }
}

TEST_CASE("polytope: vertex enumeration matches the brute-force oracle") {
  const auto P = Polytope::from_halfspaces(pentagon_A(), pentagon_b());
  const MatrixXd V = P.vertices();
  const MatrixXd W = oracle::brute_vertices(pentagon_A(), pentagon_b(), MatrixXd(0, 2), VectorXd(0));
  REQUIRE(V.rows() == W.rows());
  for (int i = 0; i < W.rows(); ++i) {
    double best = 1e9;
    for (int k = 0; k < V.rows(); ++k) best = std::min(best, (V.row(k) - W.row(i)).norm());
    CHECK(best < 1e-8);
  }

  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 2;
    MatrixXd A = oracle::gaussian_points(rng, 3 * n, n);
    const VectorXd b = VectorXd::Ones(3 * n);
    MatrixXd Ab(A.rows() + 2 * n, n);
    Ab << A, MatrixXd::Identity(n, n), -MatrixXd::Identity(n, n);
    VectorXd bb(Ab.rows());
    bb << b, VectorXd::Constant(2 * n, 3.0);
    const auto Q = Polytope::from_halfspaces(Ab, bb);
    const MatrixXd ref = oracle::brute_vertices(Ab, bb, MatrixXd(0, n), VectorXd(0));
    CHECK(Q.vertices().rows() == ref.rows());
  }
}

TEST_CASE("polytope: reduce removes redundant rows") {
  MatrixXd A(5, 2);
  A << 1, 0, 1, 0, -1, 0, 0, 1, 0, -1;
  const auto P = Polytope::from_halfspaces(A, vec({1, 2, 1, 1, 1})).reduce();
  CHECK(P.A().rows() == 4);

  // Rows planted as convex combinations of existing rows with a looser bound.
  std::mt19937_64 rng(2);
  const MatrixXd base = pentagon_A();
  MatrixXd Ap(8, 2);
  VectorXd bp(8);
  Ap.topRows(5) = base;
  bp.head(5) = pentagon_b();
  for (int k = 0; k < 3; ++k) {
    std::uniform_real_distribution<double> U(0.1, 0.9);
    const double t = U(rng);
    Ap.row(5 + k) = t * base.row(k) + (1 - t) * base.row(k + 1);
    bp(5 + k) = t * pentagon_b()(k) + (1 - t) * pentagon_b()(k + 1) + 0.1;
  }
  CHECK(Polytope::from_halfspaces(Ap, bp).reduce().A().rows() == 5);
}

TEST_CASE("polytope: support") {
  const auto r = pentagon().support(vec({1, 1}));
  CHECK(r.value == doctest::Approx(2.0));
  CHECK((r.point - vec({1, 1})).norm() < 1e-9);
  CHECK(box(2).support(vec({3, 4})).value == doctest::Approx(7.0));
  CHECK(pentagon().support(vec({0, 0})).value == doctest::Approx(0.0));

  const auto H = Polytope::from_halfspaces(pentagon_A(), pentagon_b());
  std::mt19937_64 rng(4);
  for (int k = 0; k < 50; ++k) {
    const VectorXd v = oracle::gaussian_vector(rng, 2);
    CHECK(H.support(v).value == doctest::Approx(oracle::support(pentagon_vertices(), v)).epsilon(1e-9));
  }
}

TEST_CASE("polytope: containment of points") {
  const auto P = pentagon();
  CHECK(P.contains(vec({0, 0})));
  CHECK_FALSE(P.contains(vec({2, 0})));
  CHECK(P.contains(vec({1, 1})));
  CHECK(P.to_hrep().contains(vec({1, 1})));
  CHECK(throws_kind([&] { P.contains(vec({0, 0, 0})); }, ErrorKind::DimensionMismatch));
}

TEST_CASE("polytope: projection of a point") {
  const auto simplex = Polytope::from_vertices(MatrixXd::Identity(3, 3));
  const auto r = simplex.project(vec({1, 1, 1}));
  CHECK((r.point - VectorXd::Constant(3, 1.0 / 3)).norm() < 1e-8);
  CHECK(r.distance == doctest::Approx(2 / std::sqrt(3.0)));

  CHECK(pentagon().project(vec({0.2, 0.1})).distance == doctest::Approx(0.0));
  CHECK(box(2).project(vec({2, 0}), Norm::Linf).distance == doctest::Approx(1.0));
  CHECK(box(2).project(vec({2, 2}), Norm::L1).distance == doctest::Approx(2.0));
}

TEST_CASE("polytope: affine maps") {
  const auto P = pentagon();
  CHECK(set_equal(P.affine_map(MatrixXd::Identity(2, 2)), P));
  const auto seg = box(2).affine_map(rows({{1, 0}}));
  CHECK(seg.dim() == 1);
  CHECK(set_equal(seg, box(1)));

  const MatrixXd R = rows({{0, -1}, {1, 0}});
  const auto rotated = P.affine_map(R);
  CHECK(rotated.volume() == doctest::Approx(2.875));
  CHECK(oracle::shoelace(oracle::sort_ccw(pentagon_vertices())) == doctest::Approx(2.875));

  CHECK(set_equal(box(2).inverse_affine_map(2 * MatrixXd::Identity(2, 2)), box(2, 0.5)));
  CHECK(set_equal(P.inverse_affine_map(MatrixXd::Identity(2, 2)), P));
  CHECK(throws_kind([&] { P.inverse_affine_map(rows({{1, 1}, {1, 1}})); }, ErrorKind::SingularMatrix));

  std::mt19937_64 rng(8);
  for (int k = 0; k < 10; ++k) {
    const MatrixXd M = oracle::gaussian_points(rng, 2, 2) + 2 * MatrixXd::Identity(2, 2);
    CHECK(set_equal(P.inverse_affine_map(M), P.affine_map(M.inverse())));
    CHECK(P.affine_map(M).volume() == doctest::Approx(std::abs(M.determinant()) * 2.875).epsilon(1e-8));
  }
}

TEST_CASE("polytope: intersections") {
  const auto cut = box(2).intersect_halfspaces(rows({{-1, -1}}), vec({0.5}));
  CHECK(set_equal(cut, pentagon()));
  CHECK(set_equal(intersect(pentagon(), pentagon()), pentagon()));

  const auto W = Polytope::rect(vec({0}), vec({0.5}));
  const auto band = box(2).intersect_inverse_affine(W, rows({{1, 0}}));
  CHECK(set_equal(band, Polytope::rect(vec({0, -1}), vec({0.5, 1}))));

  const auto line = box(2).intersect_affine(rows({{1, -1}}), vec({0}));
  CHECK(line.num_vertices() == 2);
  CHECK(box(2).intersect_halfspaces(rows({{1, 0}}), vec({-2})).is_empty());
}

TEST_CASE("polytope: Minkowski sum") {
  CHECK(set_equal(minkowski_sum(box(2), box(2)), box(2, 2)));
  const auto point = Polytope::from_vertices(rows({{0.3, -0.2}}));
  CHECK(set_equal(minkowski_sum(pentagon(), point), pentagon().translate(vec({0.3, -0.2}))));

  std::mt19937_64 rng(12);
  const auto Q = Polytope::from_vertices(oracle::gaussian_points(rng, 6, 2));
  const auto S = minkowski_sum(pentagon(), Q);
  for (int k = 0; k < 50; ++k) {
    const VectorXd v = oracle::gaussian_vector(rng, 2);
    CHECK(S.support(v).value ==
          doctest::Approx(oracle::support(pentagon_vertices(), v) + oracle::support(Q.vertices(), v)).epsilon(1e-9));
  }
}

TEST_CASE("polytope: Pontryagin difference") {
  CHECK(set_equal(pontryagin_difference(box(2), box(2, 0.4)), box(2, 0.6)));
  const auto origin = Polytope::from_vertices(rows({{0, 0}}));
  CHECK(set_equal(pontryagin_difference(pentagon(), origin), pentagon()));

  const auto pinched = pontryagin_difference(box(2), Ellipsoid::ball(VectorXd::Zero(2), 1.0));
  REQUIRE_FALSE(pinched.is_empty());
  CHECK(pinched.vertices().cwiseAbs().maxCoeff() < 1e-8);

  const auto zono = ConstrainedZonotope::zonotope(rows({{0.2, 0.1}, {0, 0.1}}), vec({0, 0}));
  const auto D = pontryagin_difference(box(2), zono);
  CHECK(set_equal(D, Polytope::rect(vec({-0.7, -0.9}), vec({0.7, 0.9}))));

  CHECK(pontryagin_difference(box(2), box(2, 2)).is_empty());
}

TEST_CASE("polytope: centering") {
  const auto P = Polytope::from_halfspaces(pentagon_A(), pentagon_b());
  const auto cheb = P.centering(CenteringKind::Chebyshev);
  CHECK(cheb.radius == doctest::Approx(0.73).epsilon(0.007));
  const auto mvie = P.centering(CenteringKind::InscribedEllipsoid);
  const double area = std::numbers::pi / std::sqrt(mvie.shape.determinant());
  CHECK(area == doctest::Approx(1.89).epsilon(0.003));

  const auto R = Polytope::rect_centered(vec({1, 2}), vec({0.5, 0.25}));
  for (auto kind : {CenteringKind::InscribedEllipsoid, CenteringKind::CircumscribedEllipsoid}) {
    CHECK((R.centering(kind).center - vec({1, 2})).norm() < 1e-5);
  }
  // A non-square box has a segment of Chebyshev centers; a square has one.
  const auto sq = Polytope::rect_centered(vec({1, 2}), vec({0.5, 0.5})).centering(CenteringKind::Chebyshev);
  CHECK((sq.center - vec({1, 2})).norm() < 1e-8);
  CHECK(R.centering(CenteringKind::Chebyshev).radius == doctest::Approx(0.25));
  const auto rect = R.centering(CenteringKind::CircumscribedRect);
  CHECK((rect.lower - vec({0.5, 1.75})).norm() < 1e-9);
  CHECK((rect.upper - vec({1.5, 2.25})).norm() < 1e-9);

  const auto outer = P.centering(CenteringKind::CircumscribedEllipsoid);
  for (int i = 0; i < 5; ++i) {
    const VectorXd d = pentagon_vertices().row(i).transpose() - outer.center;
    CHECK(d.dot(outer.shape * d) <= 1 + 1e-6);
  }
  CHECK(throws_kind([] { Polytope::from_vertices(rows({{0, 0}, {1, 1}})).centering(CenteringKind::Chebyshev); },
                    ErrorKind::EmptyInterior));
}

TEST_CASE("polytope: volume") {
  for (int n = 1; n <= 4; ++n) CHECK(box(n).volume() == std::ldexp(1.0, n));
  CHECK(Polytope::rect(vec({0, -1, 2}), vec({0.5, 3, 2.25})).volume() == doctest::Approx(0.5));
  // Four rows on box corners but only three distinct points.
  CHECK(Polytope::from_vertices(rows({{0, 0}, {1, 0}, {0, 1}, {0, 1}})).volume() == doctest::Approx(0.5));
  CHECK(pentagon().volume() == doctest::Approx(2.875));
  MatrixXd V(4, 3);
  V << MatrixXd::Identity(3, 3), Eigen::RowVectorXd::Zero(3);
  CHECK(Polytope::from_vertices(V).volume() == doctest::Approx(1.0 / 6));
  CHECK(throws_kind([] { box(7).volume(); }, ErrorKind::DimensionCap));
}

TEST_CASE("polytope: projection, slicing and powers") {
  MatrixXd V(6, 3);
  V << MatrixXd::Identity(3, 3), -MatrixXd::Identity(3, 3);
  const auto diamond = Polytope::from_vertices(V).project_away({2});
  CHECK(set_equal(diamond, Polytope::from_vertices(rows({{1, 0}, {-1, 0}, {0, 1}, {0, -1}}))));
  CHECK(set_equal(pentagon().project_away({}), pentagon()));
  CHECK(set_equal(box(3).project_away({0}), box(2)));
  CHECK(throws_kind([] { box(2).project_away({5}); }, ErrorKind::BadDims));

  const auto seg = box(2).slice({0}, vec({0}));
  CHECK(seg.dim() == 2);
  CHECK(set_equal(seg, Polytope::from_vertices(rows({{0, -1}, {0, 1}}))));
  CHECK(box(2).slice({0}, vec({3})).is_empty());
  const auto cut = pentagon().slice({1}, vec({0.75}));
  CHECK(set_equal(cut, Polytope::from_vertices(rows({{-1, 0.75}, {1, 0.75}}))));

  CHECK(set_equal(pentagon().cartesian_power(1), pentagon()));
  CHECK(set_equal(box(1).cartesian_power(2), box(2)));
  CHECK(pentagon().cartesian_power(2).num_vertices() == 25);
}

TEST_CASE("polytope: containment of sets") {
  CHECK(contains_set(box(2), pentagon()));
  CHECK_FALSE(contains_set(pentagon(), box(2)));
  CHECK(contains_set(pentagon(), pentagon()));
  CHECK(contains_set(box(2), Ellipsoid::ball(VectorXd::Zero(2), 1.0)));
  CHECK_FALSE(contains_set(pentagon(), Ellipsoid::ball(VectorXd::Zero(2), 1.0)));
  CHECK(contains_set(box(2), ConstrainedZonotope::rect(vec({-0.5, -1}), vec({1, 0.5}))));

  // Agreement with boundary sampling of random ellipses.
  std::mt19937_64 rng(31);
  for (int k = 0; k < 20; ++k) {
    const MatrixXd G = 0.4 * oracle::gaussian_points(rng, 2, 2);
    const VectorXd c = 0.3 * oracle::gaussian_vector(rng, 2);
    const auto E = Ellipsoid::from_generator(G, c);
    bool sampled = true;
    for (int s = 0; s < 500; ++s) {
      const double th = 2 * std::numbers::pi * s / 500;
      const VectorXd x = G * vec({std::cos(th), std::sin(th)}) + c;
      sampled = sampled && oracle::rows_inside(x.transpose(), pentagon_A(), pentagon_b(), 0);
    }
    const bool exact = contains_set(pentagon(), E);
    if (exact) CHECK(sampled);
  }
}

TEST_CASE("polytope: interior points") {
  CHECK(box(2).interior_point(InteriorKind::Chebyshev).norm() < 1e-9);
  CHECK(box(2).interior_point(InteriorKind::Centroid).norm() < 1e-9);
  CHECK((pentagon().interior_point(InteriorKind::Centroid) - vec({0.1, 0.1})).norm() < 1e-12);

  const auto simplex = Polytope::from_halfspaces(rows({{-1, 0}, {0, -1}, {1, 1}}), vec({0, 0, 1}));
  const VectorXd x = simplex.interior_point(InteriorKind::Chebyshev);
  const VectorXd slack = (simplex.b() - simplex.A() * x).array() / simplex.A().rowwise().norm().array();
  CHECK(slack.maxCoeff() - slack.minCoeff() < 1e-8);
}

TEST_CASE("polytope: random round trips") {
  std::mt19937_64 rng(40);
  for (int k = 0; k < 30; ++k) {
    const int n = 2 + k % 2;
    const auto P = Polytope::from_vertices(oracle::gaussian_points(rng, 8, n));
    CHECK(set_equal(P.to_hrep(), P));
    const auto S = Polytope::from_vertices(0.2 * oracle::gaussian_points(rng, 4, n));
    const auto D = pontryagin_difference(P, S);
    if (!D.is_empty()) CHECK(contains_set(P, minkowski_sum(D, S)));
    CHECK(contains_set(pontryagin_difference(minkowski_sum(P, S), S), P));
  }
}
