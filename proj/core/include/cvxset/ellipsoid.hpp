#pragma once

#include "cvxset/linalg.hpp"
#include "cvxset/polytope.hpp"
#include "cvxset/tolerance.hpp"

#include <string>

namespace cvxset {

/// Full-dimensional ellipsoid {x : (x - c)' Q (x - c) <= 1} = {G u + c : ||u|| <= 1}
/// with Q = (G G')^-1. Both Q and a square generator G are kept.
class Ellipsoid {
 public:
  Ellipsoid() = default;

  /// Throws NotPositiveDefinite when Q is not symmetric positive definite.
  static Ellipsoid from_shape(const MatrixXd& Q, const VectorXd& c, const Tolerance& tol = {});
  /// Throws SingularMatrix when G is not square and nonsingular.
  static Ellipsoid from_generator(const MatrixXd& G, const VectorXd& c, const Tolerance& tol = {});
  static Ellipsoid ball(const VectorXd& c, double r, const Tolerance& tol = {});
  /// Shape and generator as given; the caller vouches that Q = (G G')^-1.
  static Ellipsoid from_parts(const MatrixXd& Q, const MatrixXd& G, const VectorXd& c, const Tolerance& tol = {});

  int dim() const { return static_cast<int>(c_.size()); }
  bool is_empty() const { return false; }
  const MatrixXd& Q() const { return Q_; }
  const MatrixXd& G() const { return G_; }
  const VectorXd& c() const { return c_; }
  const Tolerance& tolerance() const { return tol_; }
  Ellipsoid with_tolerance(const Tolerance& tol) const;

  /// Value c'v + ||G'v||. For v = 0 the value is 0 and the point is the center.
  SupportResult support(const VectorXd& v) const;
  /// Maximizer c + G G'v / ||G'v||; ZeroDirection for v = 0.
  VectorXd support_vector(const VectorXd& v) const;
  bool contains(const VectorXd& x) const;
  ProjectionResult project(const VectorXd& v) const;

  /// Image under a full row-rank map; RankDeficient otherwise.
  Ellipsoid affine_map(const MatrixXd& M, const VectorXd& v = VectorXd()) const;
  Ellipsoid translate(const VectorXd& v) const;
  Ellipsoid inverse_affine_map(const MatrixXd& M) const;
  Ellipsoid project_away(const std::vector<int>& dims) const;

  double volume() const;
  CenteringResult centering(CenteringKind kind) const;
  std::pair<VectorXd, VectorXd> bounding_box() const;
  /// Half-widths of the bounding box: row 2-norms of G.
  VectorXd interval_half_widths() const;

  std::string describe() const;

 private:
  MatrixXd Q_;
  MatrixXd G_;
  VectorXd c_;
  Tolerance tol_;
};

bool contains_set(const Ellipsoid& E, const Ellipsoid& Y);
bool contains_set(const Ellipsoid& E, const Polytope& Y);
bool set_equal(const Ellipsoid& E, const Ellipsoid& F);

/// Volume of the unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace cvxset
