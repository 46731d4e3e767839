#pragma once

#include "cvxset/linalg.hpp"
#include "cvxset/tolerance.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cvxset {

class ConstrainedZonotope;
class Ellipsoid;

/// Maximum of v'x over a set together with a maximizer.
struct SupportResult {
  double value = 0.0;
  VectorXd point;
};

/// Closest point of a set to a query and the distance in the chosen norm.
struct ProjectionResult {
  VectorXd point;
  double distance = 0.0;
};

/// Norm used by projection: 1, 2 or infinity.
enum class Norm { L1, L2, Linf };

enum class CenteringKind { Chebyshev, InscribedEllipsoid, CircumscribedEllipsoid, CircumscribedRect };

/// Inscribed or circumscribed summary of a set. Ball: `center`, `radius`. Ellipsoid:
/// {x : (x - center)' shape (x - center) <= 1}. Rectangle: [lower, upper].
struct CenteringResult {
  CenteringKind kind = CenteringKind::Chebyshev;
  VectorXd center;
  double radius = 0.0;
  MatrixXd shape;
  VectorXd lower;
  VectorXd upper;
};

enum class InteriorKind { Chebyshev, Centroid };

/// Bounded polytope held as a vertex list, a halfspace description or both.
///
/// The halfspace form is {x : A x <= b, Ae x = be}. Empty polytopes are representable
/// and flagged; every predicate is defined on them. Values are immutable: to_vrep() and
/// to_hrep() return completed copies.
class Polytope {
 public:
  /// Empty polytope in R^0.
  Polytope() = default;

  static Polytope from_vertices(const MatrixXd& V, const Tolerance& tol = {});
  /// Checks boundedness with 2n support LPs; throws UnboundedPolytope.
  static Polytope from_halfspaces(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae = MatrixXd(),
                                  const VectorXd& be = VectorXd(), const Tolerance& tol = {});
  static Polytope rect(const VectorXd& lower, const VectorXd& upper, const Tolerance& tol = {});
  static Polytope rect_centered(const VectorXd& center, const VectorXd& half_width, const Tolerance& tol = {});
  static Polytope empty(int dim, const Tolerance& tol = {});
  /// Both representations as given, without conversion or checks. The caller vouches
  /// that they describe the same nonempty set (used when reloading stored data).
  static Polytope from_both(const MatrixXd& V, const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae,
                            const VectorXd& be, const Tolerance& tol = {});

  int dim() const { return dim_; }
  bool is_empty() const { return empty_; }
  bool has_vrep() const { return V_.has_value(); }
  bool has_hrep() const { return H_.has_value(); }
  bool is_full_dimensional() const;

  /// Stored representations; throw InvalidArgument when absent.
  const MatrixXd& V() const;
  const MatrixXd& A() const;
  const VectorXd& b() const;
  const MatrixXd& Ae() const;
  const VectorXd& be() const;

  const Tolerance& tolerance() const { return tol_; }
  Polytope with_tolerance(const Tolerance& tol) const;

  /// Vertex matrix, enumerated when only the halfspace form is stored.
  MatrixXd vertices() const;
  int num_vertices() const { return static_cast<int>(vertices().rows()); }

  Polytope to_vrep() const;
  Polytope to_hrep() const;
  /// Drops non-extreme vertices and redundant rows (one LP per row).
  Polytope reduce() const;

  SupportResult support(const VectorXd& v) const;
  bool contains(const VectorXd& x) const;
  ProjectionResult project(const VectorXd& v, Norm p = Norm::L2) const;

  Polytope affine_map(const MatrixXd& M, const VectorXd& v = VectorXd()) const;
  Polytope translate(const VectorXd& v) const;
  Polytope inverse_affine_map(const MatrixXd& M) const;

  Polytope intersect_halfspaces(const MatrixXd& A, const VectorXd& b) const;
  Polytope intersect_affine(const MatrixXd& Ae, const VectorXd& be) const;
  /// Intersection with an arbitrary (possibly unbounded) polyhedron.
  Polytope intersect_polyhedron(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae,
                                const VectorXd& be) const;
  /// {x in P : R x in W}.
  Polytope intersect_inverse_affine(const Polytope& W, const MatrixXd& R) const;

  /// Removes the listed coordinates (zero-based).
  Polytope project_away(const std::vector<int>& dims) const;
  /// Fixes x_d = value_d for each listed coordinate; ambient dimension is kept.
  Polytope slice(const std::vector<int>& dims, const VectorXd& values) const;
  Polytope cartesian_power(int m) const;

  double volume() const;
  CenteringResult centering(CenteringKind kind) const;
  VectorXd interior_point(InteriorKind kind = InteriorKind::Chebyshev) const;
  /// Smallest axis-aligned box [lower, upper] containing the set.
  std::pair<VectorXd, VectorXd> bounding_box() const;

  std::string describe() const;

 private:
  int dim_ = 0;
  bool empty_ = true;
  std::optional<MatrixXd> V_;
  struct HRep {
    MatrixXd A;
    VectorXd b;
    MatrixXd Ae;
    VectorXd be;
  };
  std::optional<HRep> H_;
  Tolerance tol_;

  static Polytope make_h(HRep h, int dim, const Tolerance& tol, bool check_feasible);
  HRep hrep() const;
  Polytope reduced_h() const;
  friend Polytope minkowski_sum(const Polytope&, const Polytope&);
};

Polytope intersect(const Polytope& P, const Polytope& Q);
Polytope minkowski_sum(const Polytope& P, const Polytope& Q);

/// P minus S: every halfspace row tightened by the support of S along its normal.
Polytope pontryagin_difference(const Polytope& P, const Polytope& S);
Polytope pontryagin_difference(const Polytope& P, const ConstrainedZonotope& S);
Polytope pontryagin_difference(const Polytope& P, const Ellipsoid& S);

/// Y subset of P, decided from the support of Y along every row of P.
bool contains_set(const Polytope& P, const Polytope& Y);
bool contains_set(const Polytope& P, const ConstrainedZonotope& Y);
bool contains_set(const Polytope& P, const Ellipsoid& Y);

/// Mutual containment.
bool set_equal(const Polytope& P, const Polytope& Q);

}  // namespace cvxset
