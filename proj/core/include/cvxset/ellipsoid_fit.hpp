#pragma once

#include "cvxset/linalg.hpp"
#include "cvxset/tolerance.hpp"

namespace cvxset::solver {

/// {x : (x - center)' shape (x - center) <= 1}
struct EnclosingEllipsoid {
  MatrixXd shape;
  VectorXd center;
};

/// {B u + center : ||u||_2 <= 1} with B symmetric positive definite.
struct InscribedEllipsoid {
  MatrixXd B;
  VectorXd center;
};

/// Minimum-volume enclosing ellipsoid of the rows of `points` (Khachiyan's first-order
/// method). Every point satisfies the quadratic form <= 1 + eps.
///
/// Throws DegenerateInput when the points do not affinely span the space.
EnclosingEllipsoid mvee_of_points(const MatrixXd& points, double eps = 1e-7);

/// Maximum-volume ellipsoid inscribed in {x : A x <= b}, by a damped-Newton log-barrier
/// method on  max log det B  s.t.  ||B a_i|| + a_i' d <= b_i.
///
/// Throws EmptyInterior when no ball of positive radius fits and Unbounded when the
/// halfspaces do not bound a region.
InscribedEllipsoid mvie_of_halfspaces(const MatrixXd& A, const VectorXd& b, const Tolerance& tol = {});

/// Chebyshev ball of {x : A x <= b}; radius is +inf-free (Unbounded thrown instead).
struct ChebyshevBall {
  VectorXd center;
  double radius = 0.0;
  bool feasible = false;
};

ChebyshevBall chebyshev_ball(const MatrixXd& A, const VectorXd& b, const Tolerance& tol = {});

}  // namespace cvxset::solver
