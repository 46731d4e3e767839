#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include "cvxset/ellipsoid.hpp"

#include <cmath>
#include <numbers>

using namespace cvxset;
using namespace testing;

namespace {

Ellipsoid E1() { return Ellipsoid::from_shape(rows({{1, 0}, {0, 4}}), vec({2, -1})); }
Ellipsoid unit() { return Ellipsoid::ball(VectorXd::Zero(2), 1.0); }

}  // namespace

TEST_CASE("ellipsoid: construction") {
  const auto E = E1();
  CHECK((E.G() * E.G().transpose() - E.Q().inverse()).norm() < 1e-12);
  CHECK((unit().Q() - MatrixXd::Identity(2, 2)).norm() < 1e-15);
  CHECK(throws_kind([] { Ellipsoid::from_shape(rows({{1, 0}, {0, 0}}), vec({0, 0})); },
                    ErrorKind::NotPositiveDefinite));
  CHECK(throws_kind([] { Ellipsoid::from_generator(rows({{1, 1}, {1, 1}}), vec({0, 0})); },
                    ErrorKind::SingularMatrix));
  CHECK(throws_kind([] { Ellipsoid::ball(vec({0}), -1); }, ErrorKind::InvalidArgument));
}

TEST_CASE("ellipsoid: support") {
  const auto r = E1().support(vec({1, 0}));
  CHECK(r.value == doctest::Approx(3.0));
  CHECK((r.point - vec({3, -1})).norm() < 1e-12);
  const VectorXd v = vec({0.6, 0.8});
  CHECK(unit().support(v).value == doctest::Approx(1.0));
  CHECK((unit().support(v).point - v).norm() < 1e-12);
  CHECK(E1().support(vec({0, 0})).value == 0.0);
  CHECK(throws_kind([] { E1().support_vector(vec({0, 0})); }, ErrorKind::ZeroDirection));
}

TEST_CASE("ellipsoid: maps") {
  CHECK(set_equal(E1().affine_map(MatrixXd::Identity(2, 2)), E1()));
  const auto stretched = unit().affine_map(rows({{1, 0}, {0, 2}}));
  CHECK((stretched.G() * stretched.G().transpose() - rows({{1, 0}, {0, 4}})).norm() < 1e-12);
  CHECK(throws_kind([] { unit().affine_map(rows({{1, 1}, {1, 1}})); }, ErrorKind::RankDeficient));

  std::mt19937_64 rng(14);
  for (int k = 0; k < 10; ++k) {
    const MatrixXd M = oracle::gaussian_points(rng, 1 + k % 2, 2);
    const auto F = E1().affine_map(M);
    for (int s = 0; s < 50; ++s) {
      const VectorXd v = oracle::gaussian_vector(rng, M.rows());
      CHECK(F.support(v).value == doctest::Approx(E1().support(M.transpose() * v).value).epsilon(1e-9));
    }
    if (M.rows() == 2)
      CHECK(F.volume() == doctest::Approx(std::abs(M.determinant()) * E1().volume()).epsilon(1e-9));
  }

  const MatrixXd M = rows({{2, 1}, {0, 1}});
  const auto inv = E1().inverse_affine_map(M);
  CHECK((inv.Q() - M.transpose() * E1().Q() * M).norm() < 1e-12);
  CHECK(set_equal(inv.affine_map(M), E1()));
  CHECK(throws_kind([] { E1().inverse_affine_map(rows({{1, 1}, {1, 1}})); }, ErrorKind::SingularMatrix));
}

TEST_CASE("ellipsoid: containment and projection") {
  CHECK(E1().contains(vec({2, -1})));
  CHECK_FALSE(E1().contains(vec({2, 0})));
  const auto r = unit().project(vec({3, 0}));
  CHECK((r.point - vec({1, 0})).norm() < 1e-10);
  CHECK(r.distance == doctest::Approx(2.0));
  CHECK(unit().project(vec({0.1, 0.2})).distance == 0.0);

  // Projection onto E1 from outside lands on the boundary with the normal along the residual.
  const auto p = E1().project(vec({4, 1}));
  const VectorXd d = p.point - E1().c();
  CHECK(d.dot(E1().Q() * d) == doctest::Approx(1.0).epsilon(1e-10));
  const VectorXd normal = E1().Q() * d;
  const VectorXd resid = vec({4, 1}) - p.point;
  CHECK(std::abs(normal(0) * resid(1) - normal(1) * resid(0)) < 1e-9);
}

TEST_CASE("ellipsoid: containment of sets") {
  const auto big = Ellipsoid::ball(VectorXd::Zero(2), 2.0);
  CHECK(contains_set(big, unit()));
  CHECK_FALSE(contains_set(big, Ellipsoid::ball(vec({1.5, 0}), 1.0)));
  CHECK(contains_set(Ellipsoid::ball(VectorXd::Zero(3), 1.0), Polytope::from_vertices(MatrixXd::Identity(3, 3))));

  std::mt19937_64 rng(23);
  int agree = 0;
  for (int k = 0; k < 30; ++k) {
    const auto F = Ellipsoid::from_generator(0.5 * oracle::gaussian_points(rng, 2, 2) + 0.3 * MatrixXd::Identity(2, 2),
                                             0.4 * oracle::gaussian_vector(rng, 2));
    bool sampled = true;
    for (int s = 0; s < 500; ++s) {
      const double th = 2 * std::numbers::pi * s / 500;
      sampled = sampled && E1().translate(vec({-2, 1})).contains(F.G() * vec({std::cos(th), std::sin(th)}) + F.c());
    }
    const bool exact = contains_set(E1().translate(vec({-2, 1})), F);
    agree += exact == sampled;
    if (exact) CHECK(sampled);
  }
  CHECK(agree >= 29);
}

TEST_CASE("ellipsoid: centering, volume and bounds") {
  CHECK(E1().volume() == doctest::Approx(std::numbers::pi / 2));
  CHECK(unit().centering(CenteringKind::Chebyshev).radius == doctest::Approx(1.0));
  CHECK(E1().centering(CenteringKind::Chebyshev).radius == doctest::Approx(0.5));
  const auto [lo, hi] = E1().bounding_box();
  CHECK((lo - vec({1, -1.5})).norm() < 1e-12);
  CHECK((hi - vec({3, -0.5})).norm() < 1e-12);
  CHECK((E1().centering(CenteringKind::InscribedEllipsoid).shape - E1().Q()).norm() < 1e-12);
  CHECK(unit_ball_volume(3) == doctest::Approx(4 * std::numbers::pi / 3));
}
