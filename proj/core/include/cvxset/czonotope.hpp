#pragma once

#include "cvxset/ellipsoid.hpp"
#include "cvxset/linalg.hpp"
#include "cvxset/polytope.hpp"
#include "cvxset/tolerance.hpp"

#include <string>
#include <vector>

namespace cvxset {

/// Strategies for subtracting a zonotope from a constrained zonotope.
enum class DifferenceStrategy {
  /// Exact: X <- (X - g) intersect (X + g) per generator; latent size grows.
  ExactRecursive,
  /// Sound inner approximation k + (1 - rho)(X - k); latent size preserved.
  ScaledInner,
  /// ExactRecursive when the subtrahend has at most 4 generators and the predicted
  /// latent dimension stays within 256, ScaledInner otherwise.
  Auto,
};

std::string_view to_string(DifferenceStrategy s);

/// {G xi + c : ||xi||_inf <= 1, Ae xi = be}.
///
/// Equality rows act on the latent vector. Constructors decide emptiness with one
/// feasibility LP; operations that cannot change emptiness propagate the flag.
class ConstrainedZonotope {
 public:
  ConstrainedZonotope() = default;
  ConstrainedZonotope(const MatrixXd& G, const VectorXd& c, const MatrixXd& Ae = MatrixXd(),
                      const VectorXd& be = VectorXd(), const Tolerance& tol = {});

  static ConstrainedZonotope zonotope(const MatrixXd& G, const VectorXd& c, const Tolerance& tol = {});
  static ConstrainedZonotope rect(const VectorXd& lower, const VectorXd& upper, const Tolerance& tol = {});
  static ConstrainedZonotope rect_centered(const VectorXd& center, const VectorXd& half_width,
                                           const Tolerance& tol = {});
  static ConstrainedZonotope singleton(const VectorXd& x, const Tolerance& tol = {});
  static ConstrainedZonotope empty(int dim, const Tolerance& tol = {});
  /// Lifted construction: interval hull for the state block plus one bounded slack per
  /// inequality row.
  static ConstrainedZonotope from_polytope(const Polytope& P);
  /// Interval-hull zonotope c +- row norms of G (outer approximation).
  static ConstrainedZonotope interval_hull(const Ellipsoid& E);

  int dim() const { return static_cast<int>(c_.size()); }
  int latent_dim() const { return static_cast<int>(G_.cols()); }
  int num_equalities() const { return static_cast<int>(Ae_.rows()); }
  bool is_zonotope() const { return Ae_.rows() == 0; }
  bool is_empty() const { return empty_; }
  const MatrixXd& G() const { return G_; }
  const VectorXd& c() const { return c_; }
  const MatrixXd& Ae() const { return Ae_; }
  const VectorXd& be() const { return be_; }
  const Tolerance& tolerance() const { return tol_; }
  ConstrainedZonotope with_tolerance(const Tolerance& tol) const;

  /// Exact conversion by enumerating the latent polytope; LatentDimCap above `cap`.
  Polytope to_polytope(int cap = 12) const;

  SupportResult support(const VectorXd& v) const;
  bool contains(const VectorXd& x) const;
  ProjectionResult project(const VectorXd& v, Norm p = Norm::L2) const;
  /// G xi* + c with xi* minimizing ||xi||_inf over the latent slice.
  VectorXd interior_point() const;

  ConstrainedZonotope affine_map(const MatrixXd& M, const VectorXd& v = VectorXd()) const;
  ConstrainedZonotope translate(const VectorXd& v) const;
  ConstrainedZonotope inverse_affine_map(const MatrixXd& M) const;

  ConstrainedZonotope intersect_halfspaces(const MatrixXd& A, const VectorXd& b) const;
  ConstrainedZonotope intersect_affine(const MatrixXd& Ae, const VectorXd& be) const;
  ConstrainedZonotope intersect_polyhedron(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae,
                                           const VectorXd& be) const;

  ConstrainedZonotope project_away(const std::vector<int>& dims) const;
  ConstrainedZonotope slice(const std::vector<int>& dims, const VectorXd& values) const;
  ConstrainedZonotope cartesian_power(int m) const;

  /// Grid estimate of the area of a planar set.
  double volume_2d(int grid_n = 200) const;
  CenteringResult centering(CenteringKind kind) const;
  std::pair<VectorXd, VectorXd> bounding_box() const;

  /// Drops zero generators and linearly dependent equality rows.
  ConstrainedZonotope remove_redundancy() const;

  std::string describe() const;

 private:
  MatrixXd G_;
  VectorXd c_;
  MatrixXd Ae_;
  VectorXd be_;
  bool empty_ = true;
  Tolerance tol_;

  static ConstrainedZonotope unchecked(MatrixXd G, VectorXd c, MatrixXd Ae, VectorXd be, bool empty,
                                       const Tolerance& tol);
  bool latent_feasible() const;

  friend ConstrainedZonotope minkowski_sum(const ConstrainedZonotope&, const ConstrainedZonotope&);
  friend ConstrainedZonotope intersect(const ConstrainedZonotope&, const ConstrainedZonotope&, const MatrixXd&);
};

ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& X, const ConstrainedZonotope& Y);
ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& X, const Polytope& Y);

/// {x in X : R x in Y}; R empty means identity.
ConstrainedZonotope intersect(const ConstrainedZonotope& X, const ConstrainedZonotope& Y,
                              const MatrixXd& R = MatrixXd());
/// Polytope operands enter through their halfspace rows.
ConstrainedZonotope intersect(const ConstrainedZonotope& X, const Polytope& Y, const MatrixXd& R = MatrixXd());

/// Subtrahend must be a zonotope (UnsupportedSubtrahend otherwise).
ConstrainedZonotope pontryagin_difference(const ConstrainedZonotope& X, const ConstrainedZonotope& S,
                                          DifferenceStrategy strategy = DifferenceStrategy::Auto,
                                          DifferenceStrategy* used = nullptr);
/// The ellipsoid is replaced by its interval-hull zonotope.
ConstrainedZonotope pontryagin_difference(const ConstrainedZonotope& X, const Ellipsoid& S,
                                          DifferenceStrategy strategy = DifferenceStrategy::Auto,
                                          DifferenceStrategy* used = nullptr);

/// Y subset of X, decided by converting Y to vertices and testing each in X.
///
/// Reference formulation for two constrained zonotopes: Y is a subset of X iff
///
///     minimize    1 + alpha'(c_Y - G_X xi_X - c_X) - beta' be_Y
///     subject to  ||xi_X||_inf <= 1,  Ae_X xi_X = be_X,
///                 ||G_Y' alpha + Ae_Y' beta||_1 <= 1
///
/// has a nonnegative optimal value. That program is bilinear; the vertex test gives the
/// same answer at this scale.
bool contains_set(const ConstrainedZonotope& X, const ConstrainedZonotope& Y);
bool contains_set(const ConstrainedZonotope& X, const Polytope& Y);
bool set_equal(const ConstrainedZonotope& X, const ConstrainedZonotope& Y);
bool set_equal(const ConstrainedZonotope& X, const Polytope& Y);

}  // namespace cvxset
