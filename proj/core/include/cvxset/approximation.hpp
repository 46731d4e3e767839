#pragma once

#include "cvxset/czonotope.hpp"
#include "cvxset/ellipsoid.hpp"
#include "cvxset/linalg.hpp"
#include "cvxset/polytope.hpp"

namespace cvxset {

/// Unit direction vectors, one per row.
using DirectionSet = MatrixXd;

/// Number of orthant points used when no count is given.
inline constexpr int kDefaultSpreadCount = 20;

/// 2n + 2^n D well-separated unit vectors.
///
/// D points in the closed positive orthant are spread by a convex-concave procedure:
///
///     maximize    r
///     subject to  ||x_i - x_j|| >= r,  ||x_i - e_j|| >= r,  2 x_i >= r,  0.8 <= ||x_i|| <= 1
///
/// with the reverse-convex constraints linearized about the previous iterate, a trust
/// region on each step, and iterates renormalized to the sphere. The result lists
/// e_1, -e_1, ..., e_n, -e_n and then, for each sign pattern in binary order, every
/// orthant point with those signs applied. Deterministic.
DirectionSet spread_points(int n, int D, int iters = 100);

/// spread_points(n, kDefaultSpreadCount), cached per dimension.
const DirectionSet& default_directions(int n);

/// {x : d'x <= h_X(d) for each direction d}. Contains X.
Polytope outer_polytope(const Polytope& X, const DirectionSet& dirs);
Polytope outer_polytope(const ConstrainedZonotope& X, const DirectionSet& dirs);
Polytope outer_polytope(const Ellipsoid& X, const DirectionSet& dirs);

/// Convex hull of support vectors along each direction. Contained in X.
Polytope inner_polytope(const Polytope& X, const DirectionSet& dirs);
Polytope inner_polytope(const ConstrainedZonotope& X, const DirectionSet& dirs);
Polytope inner_polytope(const Ellipsoid& X, const DirectionSet& dirs);

/// Smallest angle (radians) between any two rows.
double min_pairwise_angle(const DirectionSet& dirs);

}  // namespace cvxset
