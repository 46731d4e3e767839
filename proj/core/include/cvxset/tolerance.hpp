#pragma once

namespace cvxset {

/// Numerical tolerances shared by every solver and set operation.
///
/// Each set value carries its own copy (mirroring per-object solver settings);
/// operations propagate the tolerance of their left operand.
struct Tolerance {
  double feas = 1e-8;      // absolute feasibility slack
  double rank = 1e-10;     // singular-value cutoff relative to the largest
  double opt = 1e-9;       // optimality gap for iterative solvers
  int iter_max = 10'000;   // iteration cap

  /// Throws InvalidArgument unless all fields are strictly positive.
  void validate() const;
};

}  // namespace cvxset
