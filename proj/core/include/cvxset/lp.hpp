#pragma once

#include "cvxset/linalg.hpp"
#include "cvxset/tolerance.hpp"

#include <string_view>

namespace cvxset::solver {

/// Linear program in the form
///
///     minimize    c' x
///     subject to  A_ub x <= b_ub
///                 A_eq x  = b_eq
///                 lower <= x <= upper
///
/// Empty `lower`/`upper` mean the variable is free on that side. Entries may be
/// +-infinity.
struct LpProblem {
  VectorXd c;
  MatrixXd A_ub;
  VectorXd b_ub;
  MatrixXd A_eq;
  VectorXd b_eq;
  VectorXd lower;
  VectorXd upper;

  int num_vars() const { return static_cast<int>(c.size()); }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(SolveStatus s);

struct LpResult {
  SolveStatus status = SolveStatus::Infeasible;
  VectorXd x;
  double objective = 0.0;
  int iterations = 0;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Dense bounded-variable primal simplex (two phases, explicit artificials, Dantzig
/// pricing with a switch to Bland's rule while pivots stall).
///
/// Throws DimensionMismatch on inconsistent sizes. Never reports Optimal when the
/// iteration cap is hit.
LpResult solve_lp(const LpProblem& p, const Tolerance& tol = {});

}  // namespace cvxset::solver
