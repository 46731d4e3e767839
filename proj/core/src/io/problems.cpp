#include "cvxset/io/problems.hpp"

#include "cvxset/error.hpp"
#include "json_util.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace cvxset::io {

namespace {

using detail::json;

int horizon(const json& j, int fallback) {
  if (!j.contains("N")) return fallback;
  const double N = detail::to_number(j["N"], "N");
  if (N < 1 || N != std::floor(N)) throw FormatError("N must be a positive integer");
  return static_cast<int>(N);
}

}  // namespace

RcProblem double_integrator_problem(int N) {
  RcProblem p;
  p.A = (MatrixXd(2, 2) << 1.0, 0.1, 0.0, 1.0).finished();
  p.B = (MatrixXd(2, 1) << 0.005, 0.1).finished();
  p.F = p.B;
  p.U = Polytope::rect(-VectorXd::Ones(1), VectorXd::Ones(1));
  p.W = Polytope::rect(VectorXd::Constant(1, -0.4), VectorXd::Constant(1, 0.4));
  p.S = Polytope::rect(Eigen::Vector2d(-1.0, -0.5), Eigen::Vector2d(1.0, 0.5));
  p.T = Polytope::rect(Eigen::Vector2d(-0.25, -0.1), Eigen::Vector2d(0.25, 0.1));
  p.N = N;
  return p;
}

RcProblem hcw_problem(int N) {
  const double mu = 3.986004418e14;
  const double radius = 6778e3;
  const double n = std::sqrt(mu / (radius * radius * radius));
  const double mass = 300.0;
  const double dt = 30.0;
  MatrixXd Ac = MatrixXd::Zero(4, 4);
  Ac(0, 2) = 1.0;
  Ac(1, 3) = 1.0;
  Ac(2, 0) = 3.0 * n * n;
  Ac(2, 3) = 2.0 * n;
  Ac(3, 2) = -2.0 * n;
  MatrixXd Bc = MatrixXd::Zero(4, 2);
  Bc(2, 0) = 1.0 / mass;
  Bc(3, 1) = 1.0 / mass;
  // Zero-order hold through the exponential of the augmented generator.
  MatrixXd M = MatrixXd::Zero(6, 6);
  M.topLeftCorner(4, 4) = Ac * dt;
  M.topRightCorner(4, 2) = Bc * dt;
  const MatrixXd E = M.exp();
  const VectorXd scale = (VectorXd(4) << 1e-3, 1e-3, 1.0, 1.0).finished();

  RcProblem p;
  p.A = scale.asDiagonal() * E.topLeftCorner(4, 4) * scale.cwiseInverse().asDiagonal();
  p.B = scale.asDiagonal() * E.topRightCorner(4, 2);
  p.F = MatrixXd::Identity(4, 4);
  p.U = Polytope::rect(VectorXd::Constant(2, -0.2), VectorXd::Constant(2, 0.2));
  p.W = Ellipsoid::from_generator((VectorXd(4) << 1e-5, 1e-5, 1e-4, 1e-4).finished().asDiagonal(),
                                  VectorXd::Zero(4));
  MatrixXd A(7, 4);
  A << 1, 1, 0, 0,  //
      -1, 1, 0, 0,  //
      0, -1, 0, 0,  //
      0, 0, 1, 0,   //
      0, 0, -1, 0,  //
      0, 0, 0, 1,   //
      0, 0, 0, -1;
  VectorXd b(7);
  b << 0, 0, 1, 0.05, 0.05, 0.05, 0.05;
  p.S = Polytope::from_halfspaces(A, b);
  p.T = Polytope::rect((VectorXd(4) << -0.2, -0.2, -0.1, -0.1).finished(),
                       (VectorXd(4) << 0.2, 0.0, 0.1, 0.1).finished());
  p.N = N;
  return p;
}

TrajProblem robot_problem() {
  TrajProblem p = double_integrator_trajectory(0.5, 10);
  p.waypoints = {{2, Eigen::Vector2d(0.05, 0.05)},
                 {4, Eigen::Vector2d(0.15, 0.10)},
                 {6, Eigen::Vector2d(0.30, 0.20)},
                 {9, Eigen::Vector2d(0.40, 0.30)}};
  return p;
}

RcProblem parse_rc_problem(std::string_view text, const Tolerance& tol) {
  const json j = detail::parse_json(text);
  if (!j.is_object()) throw FormatError("problem must be a JSON object");
  if (j.contains("builtin")) {
    const std::string name = j["builtin"].get<std::string>();
    if (name == "double_integrator") return double_integrator_problem(horizon(j, 30));
    if (name == "hcw") return hcw_problem(horizon(j, 50));
    throw FormatError("unknown builtin problem '" + name + "'");
  }
  RcProblem p;
  p.A = detail::to_matrix(detail::field(j, "A", "rc_problem"), "A");
  p.B = detail::to_matrix(detail::field(j, "B", "rc_problem"), "B");
  p.F = j.contains("F") ? detail::to_matrix(j["F"], "F") : MatrixXd::Identity(p.A.rows(), p.A.rows());
  p.U = detail::set_from_json(detail::field(j, "U", "rc_problem"), tol);
  p.W = detail::set_from_json(detail::field(j, "W", "rc_problem"), tol);
  p.S = detail::set_from_json(detail::field(j, "S", "rc_problem"), tol);
  p.T = detail::set_from_json(detail::field(j, "T", "rc_problem"), tol);
  p.N = horizon(j, 1);
  p.validate();
  return p;
}

std::string emit_rc_problem(const RcProblem& p) {
  json j;
  j["type"] = "rc_problem";
  j["A"] = detail::to_json(p.A);
  j["B"] = detail::to_json(p.B);
  j["F"] = detail::to_json(p.F);
  j["U"] = detail::set_to_json(p.U);
  j["W"] = detail::set_to_json(p.W);
  j["S"] = detail::set_to_json(p.S);
  j["T"] = detail::set_to_json(p.T);
  j["N"] = p.N;
  return detail::pretty(j);
}

TrajProblem parse_traj_problem(std::string_view text, const Tolerance& tol) {
  const json j = detail::parse_json(text);
  if (!j.is_object()) throw FormatError("problem must be a JSON object");
  if (j.contains("builtin")) {
    const std::string name = j["builtin"].get<std::string>();
    if (name != "robot") throw FormatError("unknown builtin problem '" + name + "'");
    return robot_problem();
  }
  const double dt = j.contains("dt") ? detail::to_number(j["dt"], "dt") : 1.0;
  TrajProblem p = double_integrator_trajectory(dt, horizon(j, 1));
  if (j.contains("A_axis")) p.A_axis = detail::to_matrix(j["A_axis"], "A_axis");
  if (j.contains("B_axis")) p.B_axis = detail::to_matrix(j["B_axis"], "B_axis");
  if (j.contains("x0")) p.x0 = detail::to_vector(j["x0"], "x0");
  if (j.contains("U")) {
    const AnySet U = detail::set_from_json(j["U"], tol);
    if (const auto* z = std::get_if<ConstrainedZonotope>(&U)) {
      p.U = *z;
    } else if (const auto* q = std::get_if<Polytope>(&U)) {
      p.U = ConstrainedZonotope::from_polytope(*q);
    } else {
      throw FormatError("traj_problem: U must be a polytope or a constrained zonotope");
    }
  }
  if (j.contains("waypoints")) {
    for (const json& w : j["waypoints"]) {
      Waypoint wp;
      wp.index = static_cast<int>(detail::to_number(detail::field(w, "index", "waypoint"), "index"));
      wp.position = detail::to_vector(detail::field(w, "position", "waypoint"), "position");
      p.waypoints.push_back(std::move(wp));
    }
  }
  p.validate();
  return p;
}

std::string emit_traj_problem(const TrajProblem& p) {
  json j;
  j["type"] = "traj_problem";
  j["A_axis"] = detail::to_json(p.A_axis);
  j["B_axis"] = detail::to_json(p.B_axis);
  j["x0"] = detail::to_json(p.x0);
  j["N"] = p.N;
  j["U"] = detail::set_to_json(p.U);
  j["waypoints"] = json::array();
  for (const auto& w : p.waypoints) j["waypoints"].push_back({{"index", w.index}, {"position", detail::to_json(w.position)}});
  return detail::pretty(j);
}

std::string emit_rc_result(const RcResult& r) {
  json j;
  j["repr"] = std::string(to_string(r.repr));
  j["empty"] = r.empty;
  j["N"] = static_cast<int>(r.K.size()) - 1;
  j["strategies"] = json::array();
  for (auto s : r.strategies) j["strategies"].push_back(std::string(to_string(s)));
  j["K"] = json::array();
  for (std::size_t t = 0; t < r.K.size(); ++t) j["K"].push_back(detail::set_to_json(r.K[t], "K" + std::to_string(t)));
  return detail::pretty(j);
}

}  // namespace cvxset::io
