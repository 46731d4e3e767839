#pragma once

#include "cvxset/lp.hpp"

namespace cvxset::solver {

/// Convex quadratic program: minimize 0.5 x'Qx + q'x over the LpProblem constraint blocks.
struct QpProblem {
  MatrixXd Q;
  VectorXd q;
  MatrixXd A_ub;
  VectorXd b_ub;
  MatrixXd A_eq;
  VectorXd b_eq;
  VectorXd lower;
  VectorXd upper;

  int num_vars() const { return static_cast<int>(q.size()); }
};

struct QpResult {
  SolveStatus status = SolveStatus::Infeasible;
  VectorXd x;
  double objective = 0.0;
  int iterations = 0;

  bool optimal() const { return status == SolveStatus::Optimal; }
};

/// Primal active-set method started from an LP phase-1 point. Q must be symmetric PSD;
/// singular Q is regularized by 1e-12 I and zero-curvature directions of the reduced
/// Hessian are followed to the next blocking constraint.
///
/// Throws NotPsd and DimensionMismatch. Infeasible and IterationLimit come back as status.
QpResult solve_qp(const QpProblem& p, const Tolerance& tol = {});

}  // namespace cvxset::solver
