#pragma once

#include "cvxset/reach.hpp"

#include <string>
#include <string_view>

namespace cvxset::io {

/// Robust controllable set problem document.
///
///     {"type": "rc_problem", "A": [[...]], "B": [[...]], "F": [[...]],
///      "U": <set>, "W": <set>, "S": <set>, "T": <set>, "N": 30}
///
/// or {"type": "rc_problem", "builtin": "double_integrator" | "hcw", "N": ...}, where
/// N overrides the builtin horizon when present.
RcProblem parse_rc_problem(std::string_view text, const Tolerance& tol = {});
std::string emit_rc_problem(const RcProblem& p);

/// Trajectory problem document.
///
///     {"type": "traj_problem", "dt": 0.5, "N": 10, "x0": [0, 0, 0, 0],
///      "U": <set in R^2>, "waypoints": [{"index": 2, "position": [x, y]}, ...]}
///
/// "A_axis"/"B_axis" replace the double-integrator axis model built from dt. A
/// polytope U must be a box. {"builtin": "robot"} selects the shipped layout.
TrajProblem parse_traj_problem(std::string_view text, const Tolerance& tol = {});
std::string emit_traj_problem(const TrajProblem& p);

/// Double integrator with sampling time 0.1: S = [-1,1]x[-0.5,0.5], U = [-1,1],
/// W = [-0.4,0.4] entering through B, T = [-0.25,0.25]x[-0.1,0.1].
RcProblem double_integrator_problem(int N = 30);

/// Relative orbital motion (Hill-Clohessy-Wiltshire) in the orbital plane for a 300 kg
/// chaser at 6778 km, sampled at 30 s. State (x, y, vx, vy) in km and m/s; input
/// (Fx, Fy) in N. S is a line-of-sight cone with a velocity box, U a 0.2 N box, W an
/// axis-aligned ellipsoid, T a box at the target.
RcProblem hcw_problem(int N = 50);

/// Planar double-integrator robot: dt = 0.5, N = 10, U = [-1,1]^2, waypoints at steps
/// 2, 4, 6 and 9 inside [0, 0.45] x [0, 0.35].
TrajProblem robot_problem();

/// K_0 .. K_N of a result as a JSON document: {"repr": ..., "empty": ..., "N": ...,
/// "strategies": [...], "K": [<set>, ...]}.
std::string emit_rc_result(const RcResult& r);

}  // namespace cvxset::io
