#include <doctest.h>

#include "helpers.hpp"
#include "oracles.hpp"

#include "cvxset/io/problems.hpp"
#include "cvxset/reach.hpp"

using namespace cvxset;
using namespace testing;

namespace {

Polytope pbox(int n, double r) { return Polytope::rect(VectorXd::Constant(n, -r), VectorXd::Constant(n, r)); }

RcProblem unit_step() {
  RcProblem p;
  p.A = p.B = p.F = MatrixXd::Identity(2, 2);
  p.S = p.T = pbox(2, 1.0);
  p.U = pbox(2, 0.5);
  p.W = pbox(2, 0.2);
  p.N = 1;
  return p;
}

}  // namespace

TEST_CASE("reach: one step by interval arithmetic") {
  const auto r = rc_set(unit_step(), Representation::Polytope);
  REQUIRE(r.K.size() == 2);
  CHECK(set_equal(r.K0(), AnySet(pbox(2, 1.0))));
  CHECK(verify_one_step(r.K[0], r.K[1], unit_step(), 50).ok());

  const auto z = rc_set(unit_step(), Representation::CZonotope);
  CHECK(set_equal(z.K0(), AnySet(pbox(2, 1.0))));
}

TEST_CASE("reach: audit flags an inflated set") {
  // The unintersected preimage is [-1.3, 1.3]^2; 10% larger has states with no input.
  const auto report = verify_one_step(AnySet(pbox(2, 1.43)), AnySet(pbox(2, 1.0)), unit_step(), 50);
  CHECK_FALSE(report.ok());
  const auto tight = verify_one_step(AnySet(pbox(2, 1.3)), AnySet(pbox(2, 1.0)), unit_step(), 50);
  CHECK(tight.ok());
}

TEST_CASE("reach: zero input and disturbance collapse to S and T") {
  RcProblem p = unit_step();
  p.U = Polytope::from_vertices(rows({{0, 0}}));
  p.W = Polytope::from_vertices(rows({{0, 0}}));
  p.T = Polytope::rect(vec({-0.5, 0}), vec({2, 2}));
  p.N = 3;
  const auto r = rc_set(p, Representation::Polytope);
  CHECK(set_equal(r.K0(), AnySet(Polytope::rect(vec({-0.5, 0}), vec({1, 1})))));
  CHECK(verify_one_step(r.K[0], r.K[1], p, 30).ok());
}

TEST_CASE("reach: singular dynamics are rejected") {
  RcProblem p = unit_step();
  p.A = rows({{1, 1}, {1, 1}});
  CHECK(throws_kind([&] { rc_set(p, Representation::Polytope); }, ErrorKind::SingularMatrix));
  p = unit_step();
  p.B = MatrixXd::Identity(3, 3);
  CHECK(throws_kind([&] { rc_set(p, Representation::Polytope); }, ErrorKind::DimensionMismatch));
}

TEST_CASE("reach: double integrator") {
  const RcProblem p = io::double_integrator_problem(10);
  const auto poly = rc_set(p, Representation::Polytope);
  REQUIRE_FALSE(poly.empty);
  CHECK(contains_set(p.S, poly.K0()));
  for (int t = 0; t < p.N; ++t) CHECK(verify_one_step(poly.K[t], poly.K[t + 1], p, 40).ok());

  const auto cz = rc_set(p, Representation::CZonotope);
  REQUIRE_FALSE(cz.empty);
  CHECK(contains_set(poly.K0(), cz.K0()));
  CHECK(cz.strategies.size() == static_cast<std::size_t>(p.N));

  // Enlarging U never shrinks K_0.
  RcProblem wide = p;
  wide.U = Polytope::rect(VectorXd::Constant(1, -1.2), VectorXd::Constant(1, 1.2));
  CHECK(contains_set(rc_set(wide, Representation::Polytope).K0(), poly.K0()));
}

TEST_CASE("reach: exact subtraction matches the polytope path") {
  const RcProblem p = io::double_integrator_problem(4);
  const auto poly = rc_set(p, Representation::Polytope);
  const auto cz = rc_set(p, Representation::CZonotope, DifferenceStrategy::ExactRecursive);
  CHECK(set_equal(cz.K0(), poly.K0()));
}

TEST_CASE("reach: forward sets") {
  SUBCASE("single-input trajectory") {
    TrajProblem p = double_integrator_trajectory(0.5, 3);
    p.U = ConstrainedZonotope::singleton(vec({0.1, -0.2}));
    p.x0 = vec({0, 0, 1, 0});
    const auto D = forward_trajectory_set(p);
    const VectorXd x = D.interior_point();
    VectorXd state = p.x0;
    for (int t = 0; t < 3; ++t) {
      state = p.A() * state + p.B() * p.U.c();
      CHECK((x.segment(4 * t, 4) - state).norm() < 1e-12);
    }
    CHECK(D.bounding_box().second.isApprox(D.bounding_box().first, 1e-12));
  }
  SUBCASE("one step with identity dynamics") {
    TrajProblem p;
    p.A_axis = MatrixXd::Identity(2, 2);
    p.B_axis = rows({{1}, {1}});
    p.x0 = VectorXd::Zero(4);
    p.N = 1;
    p.U = ConstrainedZonotope::rect(vec({-1, -1}), vec({1, 1}));
    const auto D = forward_trajectory_set(p);
    CHECK(set_equal(D, Polytope::from_vertices(rows({{1, 1, 1, 1}, {1, -1, 1, -1}, {-1, 1, -1, 1}, {-1, -1, -1, -1}}))));
  }
  SUBCASE("waypoints are met by every sample") {
    const TrajProblem p = io::robot_problem();
    const auto D = forward_trajectory_set(p);
    REQUIRE_FALSE(D.is_empty());
    std::mt19937_64 rng(1);
    for (int s = 0; s < 20; ++s) {
      const VectorXd x = D.support(oracle::gaussian_vector(rng, D.dim())).point;
      for (const auto& w : p.waypoints) CHECK((x.segment(4 * (w.index - 1), 2) - w.position).norm() < 1e-8);
    }
  }
  SUBCASE("unreachable waypoint") {
    TrajProblem p = double_integrator_trajectory(0.5, 2);
    p.waypoints = {{1, vec({5, 5})}};
    CHECK(throws_kind([&] { forward_trajectory_set(p); }, ErrorKind::EmptySet));
  }
}
