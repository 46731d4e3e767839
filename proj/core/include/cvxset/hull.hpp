#pragma once

#include "cvxset/linalg.hpp"
#include "cvxset/tolerance.hpp"

namespace cvxset::geometry {

/// Facet and vertex description of the convex hull of a finite point set.
///
/// Inequality rows have unit-norm normals and are irredundant. Points that lie in a
/// proper affine subspace produce equality rows spanning its orthogonal complement.
struct HullResult {
  MatrixXd A;
  VectorXd b;
  MatrixXd Ae;
  VectorXd be;
  MatrixXd vertices;  // extreme points, one per row
  int affine_dim = -1;
};

/// Convex hull of the rows of `points` (beneath-beyond insertion in farthest-point
/// order, working in coordinates of the affine hull).
HullResult convex_hull(const MatrixXd& points, const Tolerance& tol = {});

/// Vertices of {x : A x <= b, Ae x = be}, one per row. Returns a 0-row matrix when the
/// set is empty. Throws UnboundedPolytope when the set is nonempty and unbounded.
MatrixXd enumerate_vertices(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae, const VectorXd& be,
                            const Tolerance& tol = {});

/// Rows of `points` with exact duplicates (within `eps`, max-norm) removed, first
/// occurrence kept.
MatrixXd unique_rows(const MatrixXd& points, double eps);

}  // namespace cvxset::geometry
