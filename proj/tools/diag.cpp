#include "diag.hpp"

#include "cvxset/approximation.hpp"
#include "cvxset/io/expression.hpp"
#include "cvxset/io/json_format.hpp"
#include "cvxset/io/problems.hpp"
#include "cvxset/io/render.hpp"
#include "cvxset/qp.hpp"
#include "cvxset/reach.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace cvxset::tools {

namespace {

Polytope pentagon() {
  MatrixXd V(5, 2);
  V << -1, 0.5, -1, 1, 1, 1, 1, -1, 0.5, -1;
  return Polytope::from_vertices(V);
}

Ellipsoid ellipse() { return Ellipsoid::from_shape(Eigen::Vector2d(1, 4).asDiagonal(), Eigen::Vector2d(2, -1)); }

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

std::vector<DiagCheck> diag_checks() {
  std::vector<DiagCheck> checks;
  checks.push_back({"solver-core", "LP over the unit box", [] {
                      solver::LpProblem p;
                      p.c = Eigen::Vector2d(-1, -2);
                      p.lower = VectorXd::Zero(2);
                      p.upper = VectorXd::Ones(2);
                      const auto r = solver::solve_lp(p);
                      return r.optimal() && near(r.objective, -3.0, 1e-9);
                    }});
  checks.push_back({"solver-core", "QP projection onto a halfspace", [] {
                      solver::QpProblem p;
                      p.Q = MatrixXd::Identity(2, 2);
                      p.q = -Eigen::Vector2d(2, 2);
                      p.A_ub = MatrixXd::Ones(1, 2);
                      p.b_ub = VectorXd::Ones(1);
                      const auto r = solver::solve_qp(p);
                      return r.optimal() && (r.x - Eigen::Vector2d(0.5, 0.5)).norm() < 1e-8;
                    }});
  checks.push_back({"polytope", "pentagon vertices, facets, volume", [] {
                      const Polytope P = pentagon();
                      return P.num_vertices() == 5 && P.to_hrep().A().rows() == 5 &&
                             near(P.volume(), 2.875, 1e-9);
                    }});
  checks.push_back({"polytope", "pentagon Chebyshev radius", [] {
                      return near(pentagon().centering(CenteringKind::Chebyshev).radius, 0.73223, 1e-4);
                    }});
  checks.push_back({"czonotope", "lifted pentagon equals pentagon", [] {
                      const Polytope P = pentagon();
                      const auto C = ConstrainedZonotope::from_polytope(P);
                      return C.latent_dim() == 7 && C.num_equalities() == 5 && set_equal(C, P);
                    }});
  checks.push_back({"ellipsoid", "volume and support", [] {
                      const Ellipsoid E = ellipse();
                      return near(E.volume(), std::numbers::pi / 2, 1e-9) &&
                             near(E.support(Eigen::Vector2d(1, 0)).value, 3.0, 1e-9);
                    }});
  checks.push_back({"approximation", "inner and outer polytopes bracket an ellipse", [] {
                      const Ellipsoid E = ellipse();
                      const auto& dirs = default_directions(2);
                      const Polytope in = inner_polytope(E, dirs);
                      const Polytope out = outer_polytope(E, dirs);
                      return contains_set(AnySet(out), AnySet(E)) && contains_set(AnySet(E), AnySet(in));
                    }});
  checks.push_back({"reach", "double-integrator RC set, 5 steps", [] {
                      const RcProblem p = io::double_integrator_problem(5);
                      const RcResult r = rc_set(p, Representation::Polytope);
                      if (r.empty) return false;
                      for (int t = 0; t < p.N; ++t)
                        if (!verify_one_step(r.K[t], r.K[t + 1], p, 20).ok()) return false;
                      return true;
                    }});
  checks.push_back({"reach", "forward trajectory set with waypoints", [] {
                      return !forward_trajectory_set(io::robot_problem()).is_empty();
                    }});
  checks.push_back({"cli-io", "JSON round trip is bit-exact", [] {
                      const AnySet sets[] = {pentagon().to_hrep(), ConstrainedZonotope::from_polytope(pentagon()),
                                             ellipse()};
                      for (const auto& s : sets)
                        if (!io::bit_equal(io::parse_set(io::emit_set(s)).set, s)) return false;
                      return true;
                    }});
  checks.push_back({"cli-io", "expression C1 == P1", [] {
                      io::Environment env;
                      env.emplace("P1", pentagon());
                      env.emplace("C1", ConstrainedZonotope::from_polytope(pentagon()));
                      return std::get<bool>(io::eval_expression("C1 == P1", env));
                    }});
  checks.push_back({"cli-io", "SVG of the pentagon", [] {
                      const std::string svg = io::render_svg({{pentagon(), {}}});
                      return svg.find("<polygon") != std::string::npos;
                    }});
  return checks;
}

int run_diag(std::ostream& out) {
  int failures = 0;
  out << std::left << std::setw(15) << "module" << std::setw(48) << "check" << std::setw(8) << "result"
      << "time [s]\n";
  for (const auto& c : diag_checks()) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string note;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      note = std::string("  ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += ok ? 0 : 1;
    out << std::setw(15) << c.module << std::setw(48) << c.name << std::setw(8) << (ok ? "PASS" : "FAIL")
        << std::fixed << std::setprecision(3) << dt << note << '\n';
  }
  out << (failures ? "FAILED: " + std::to_string(failures) + " check(s)\n" : std::string("all checks passed\n"));
  return failures;
}

}  // namespace cvxset::tools
