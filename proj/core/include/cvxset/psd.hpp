#pragma once

#include "cvxset/linalg.hpp"
#include "cvxset/tolerance.hpp"

#include <optional>

namespace cvxset::solver {

/// Smallest eigenvalue of a symmetric matrix.
double min_eigenvalue(const MatrixXd& S);

/// Search lambda in [lo, hi] with lambda_min(M0 + lambda M1) >= -tol.feas.
///
/// lambda_min of an affine pencil is concave in lambda, so a ternary search for its
/// maximizer finds a feasible lambda whenever one exists in the range. Returns nullopt
/// otherwise.
std::optional<double> psd_linesearch(const MatrixXd& M0, const MatrixXd& M1, double lo, double hi,
                                     const Tolerance& tol = {}, double lambda_tol = 1e-10);

}  // namespace cvxset::solver
