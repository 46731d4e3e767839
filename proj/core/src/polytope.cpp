#include "cvxset/polytope.hpp"

#include "cvxset/czonotope.hpp"
#include "cvxset/ellipsoid.hpp"
#include "cvxset/ellipsoid_fit.hpp"
#include "cvxset/error.hpp"
#include "cvxset/hull.hpp"
#include "cvxset/lp.hpp"
#include "cvxset/qp.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

namespace cvxset {

namespace {

constexpr int kVolumeDimCap = 6;
constexpr double kRedundancyTol = 1e-9;
constexpr double kInf = std::numeric_limits<double>::infinity();

double row_slack_tol(const Tolerance& tol, double a_norm, double b) {
  return tol.feas * std::max(a_norm, std::abs(b));
}

void check_dims(const std::vector<int>& dims, int n, bool allow_all) {
  std::vector<int> seen;
  for (int d : dims) {
    if (d < 0 || d >= n) fail(ErrorKind::BadDims, "dimension index out of range");
    if (std::find(seen.begin(), seen.end(), d) != seen.end()) fail(ErrorKind::BadDims, "repeated dimension");
    seen.push_back(d);
  }
  if (!allow_all && static_cast<int>(dims.size()) >= n) fail(ErrorKind::BadDims, "cannot drop every dimension");
}

solver::LpProblem lp_over(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae, const VectorXd& be,
                          const VectorXd& c) {
  solver::LpProblem lp;
  lp.c = c;
  lp.A_ub = A;
  lp.b_ub = b;
  lp.A_eq = Ae;
  lp.b_eq = be;
  return lp;
}

double facet_fan_volume(const MatrixXd& pts) {
  const int d = static_cast<int>(pts.cols());
  if (pts.rows() == 0) return 0.0;
  if (d == 1) return pts.col(0).maxCoeff() - pts.col(0).minCoeff();
  const geometry::HullResult h = geometry::convex_hull(pts);
  if (h.affine_dim < d) return 0.0;
  const MatrixXd& V = h.vertices;
  const VectorXd c = V.colwise().mean().transpose();
  const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  double vol = 0.0;
  for (int f = 0; f < h.A.rows(); ++f) {
    const VectorXd nrm = h.A.row(f).transpose();
    const double height = h.b(f) - nrm.dot(c);
    std::vector<int> on;
    for (int i = 0; i < V.rows(); ++i)
      if (std::abs(nrm.dot(V.row(i).transpose()) - h.b(f)) <= 1e-9 * scale) on.push_back(i);
    const MatrixXd basis = null_space(nrm.transpose(), 1e-12);
    const MatrixXd facet = select_rows(V, on) * basis;
    vol += height * facet_fan_volume(facet) / d;
  }
  return vol;
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

Polytope Polytope::from_vertices(const MatrixXd& V, const Tolerance& tol) {
  tol.validate();
  require(V.allFinite(), ErrorKind::InvalidArgument, "vertices must be finite");
  Polytope p;
  p.dim_ = static_cast<int>(V.cols());
  p.tol_ = tol;
  if (V.rows() == 0) return empty(p.dim_, tol);
  p.empty_ = false;
  p.V_ = V;
  return p;
}

Polytope Polytope::make_h(HRep h, int dim, const Tolerance& tol, bool check_feasible) {
  if (h.A.rows() == 0) h.A.resize(0, dim);
  if (h.Ae.rows() == 0) h.Ae.resize(0, dim);
  h.b.conservativeResize(h.A.rows());
  h.be.conservativeResize(h.Ae.rows());
  Polytope p;
  p.dim_ = dim;
  p.tol_ = tol;
  p.empty_ = false;
  if (check_feasible) {
    const solver::LpResult r = solver::solve_lp(lp_over(h.A, h.b, h.Ae, h.be, VectorXd::Zero(dim)), tol);
    if (r.status == solver::SolveStatus::Infeasible) return empty(dim, tol);
  }
  p.H_ = std::move(h);
  return p;
}

Polytope Polytope::from_halfspaces(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae, const VectorXd& be,
                                   const Tolerance& tol) {
  tol.validate();
  const bool has_ineq = A.rows() > 0;
  const bool has_eq = Ae.rows() > 0;
  require(has_ineq || has_eq || A.cols() > 0 || Ae.cols() > 0, ErrorKind::DimensionMismatch,
          "halfspace description needs at least one row or a column count");
  const int n = static_cast<int>(has_ineq ? A.cols() : (has_eq ? Ae.cols() : std::max(A.cols(), Ae.cols())));
  require(!has_ineq || A.cols() == n, ErrorKind::DimensionMismatch, "A has the wrong column count");
  require(!has_eq || Ae.cols() == n, ErrorKind::DimensionMismatch, "Ae has the wrong column count");
  require(b.size() == A.rows(), ErrorKind::DimensionMismatch, "b must match rows of A");
  require(be.size() == Ae.rows(), ErrorKind::DimensionMismatch, "be must match rows of Ae");
  require(A.allFinite() && b.allFinite() && Ae.allFinite() && be.allFinite(), ErrorKind::InvalidArgument,
          "halfspace data must be finite");

  HRep h{A, b, Ae, be};
  if (h.A.rows() == 0) h.A.resize(0, n);
  if (h.Ae.rows() == 0) h.Ae.resize(0, n);
  for (int j = 0; j < n; ++j) {
    for (double sgn : {1.0, -1.0}) {
      VectorXd c = VectorXd::Zero(n);
      c(j) = -sgn;
      const solver::LpResult r = solver::solve_lp(lp_over(h.A, h.b, h.Ae, h.be, c), tol);
      if (r.status == solver::SolveStatus::Infeasible) return empty(n, tol);
      if (r.status == solver::SolveStatus::Unbounded)
        fail(ErrorKind::UnboundedPolytope, "halfspaces do not describe a bounded set");
      if (r.status == solver::SolveStatus::IterationLimit)
        fail(ErrorKind::IterationLimit, "boundedness check hit the iteration cap");
    }
  }
  return make_h(std::move(h), n, tol, false);
}

Polytope Polytope::rect(const VectorXd& lower, const VectorXd& upper, const Tolerance& tol) {
  require(lower.size() == upper.size(), ErrorKind::DimensionMismatch, "bounds differ in length");
  require(lower.allFinite() && upper.allFinite(), ErrorKind::InvalidArgument, "bounds must be finite");
  require(((upper - lower).array() >= 0).all(), ErrorKind::InvalidArgument, "rect requires lower <= upper");
  const int n = static_cast<int>(lower.size());
  HRep h;
  h.A.resize(2 * n, n);
  h.A << MatrixXd::Identity(n, n), -MatrixXd::Identity(n, n);
  h.b.resize(2 * n);
  h.b << upper, -lower;
  Polytope p = make_h(std::move(h), n, tol, false);
  if (n <= 10) {
    const MatrixXd signs = sign_patterns(n);
    MatrixXd V(signs.rows(), n);
    for (int k = 0; k < signs.rows(); ++k)
      for (int j = 0; j < n; ++j) V(k, j) = signs(k, j) > 0 ? upper(j) : lower(j);
    p.V_ = geometry::unique_rows(V, 0.0);
  }
  return p;
}

Polytope Polytope::rect_centered(const VectorXd& center, const VectorXd& half_width, const Tolerance& tol) {
  require(center.size() == half_width.size(), ErrorKind::DimensionMismatch, "center and half-width differ");
  require((half_width.array() >= 0).all(), ErrorKind::InvalidArgument, "half-widths must be nonnegative");
  return rect(center - half_width, center + half_width, tol);
}

Polytope Polytope::from_both(const MatrixXd& V, const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae,
                             const VectorXd& be, const Tolerance& tol) {
  tol.validate();
  require(V.rows() > 0, ErrorKind::InvalidArgument, "vertex list is empty");
  require(A.rows() == b.size() && Ae.rows() == be.size(), ErrorKind::DimensionMismatch, "rhs sizes");
  const int n = static_cast<int>(V.cols());
  require((A.rows() == 0 || A.cols() == n) && (Ae.rows() == 0 || Ae.cols() == n), ErrorKind::DimensionMismatch,
          "representations differ in dimension");
  Polytope p = make_h(HRep{A, b, Ae, be}, n, tol, false);
  p.V_ = V;
  return p;
}

Polytope Polytope::empty(int dim, const Tolerance& tol) {
  Polytope p;
  p.dim_ = dim;
  p.tol_ = tol;
  p.empty_ = true;
  return p;
}

Polytope Polytope::with_tolerance(const Tolerance& tol) const {
  tol.validate();
  Polytope p = *this;
  p.tol_ = tol;
  return p;
}

// ---------------------------------------------------------------------------
// Representations

const MatrixXd& Polytope::V() const {
  if (!V_) fail(ErrorKind::InvalidArgument, "polytope has no stored vertex list");
  return *V_;
}
const MatrixXd& Polytope::A() const {
  if (!H_) fail(ErrorKind::InvalidArgument, "polytope has no stored halfspace description");
  return H_->A;
}
const VectorXd& Polytope::b() const {
  if (!H_) fail(ErrorKind::InvalidArgument, "polytope has no stored halfspace description");
  return H_->b;
}
const MatrixXd& Polytope::Ae() const {
  if (!H_) fail(ErrorKind::InvalidArgument, "polytope has no stored halfspace description");
  return H_->Ae;
}
const VectorXd& Polytope::be() const {
  if (!H_) fail(ErrorKind::InvalidArgument, "polytope has no stored halfspace description");
  return H_->be;
}

Polytope::HRep Polytope::hrep() const {
  require(!empty_, ErrorKind::EmptySet, "empty polytope has no halfspace description");
  if (H_) return *H_;
  const geometry::HullResult h = geometry::convex_hull(*V_, tol_);
  return HRep{h.A, h.b, h.Ae, h.be};
}

MatrixXd Polytope::vertices() const {
  if (empty_) return MatrixXd(0, dim_);
  if (V_) return *V_;
  return geometry::enumerate_vertices(H_->A, H_->b, H_->Ae, H_->be, tol_);
}

Polytope Polytope::to_vrep() const {
  require(!empty_, ErrorKind::EmptySet, "vertex enumeration of an empty polytope");
  if (V_) return *this;
  Polytope p = *this;
  p.V_ = vertices();
  if (p.V_->rows() == 0) return empty(dim_, tol_);
  return p;
}

Polytope Polytope::to_hrep() const {
  require(!empty_, ErrorKind::EmptySet, "halfspace enumeration of an empty polytope");
  if (H_) return *this;
  Polytope p = *this;
  const geometry::HullResult h = geometry::convex_hull(*V_, tol_);
  p.H_ = HRep{h.A, h.b, h.Ae, h.be};
  p.V_ = h.vertices;
  return p;
}

bool Polytope::is_full_dimensional() const {
  if (empty_) return false;
  if (V_) return geometry::convex_hull(*V_, tol_).affine_dim == dim_;
  if (H_->Ae.rows() > 0 && numerical_rank(H_->Ae, tol_.rank) > 0) return false;
  const solver::ChebyshevBall ball = solver::chebyshev_ball(H_->A, H_->b, tol_);
  const double scale = std::max(1.0, H_->b.size() ? H_->b.cwiseAbs().maxCoeff() : 0.0);
  return ball.feasible && ball.radius > 1e-9 * scale;
}

Polytope Polytope::reduced_h() const {
  const HRep& h = *H_;
  const int n = dim_;
  // Normalize rows, drop trivial rows, and merge parallel duplicates.
  std::vector<VectorXd> rows;
  std::vector<double> rhs;
  for (int i = 0; i < h.A.rows(); ++i) {
    const double nrm = h.A.row(i).norm();
    if (nrm <= 1e-14) {
      if (h.b(i) < -tol_.feas) return empty(n, tol_);
      continue;
    }
    const VectorXd a = h.A.row(i).transpose() / nrm;
    const double bi = h.b(i) / nrm;
    bool merged = false;
    for (std::size_t k = 0; k < rows.size(); ++k)
      if ((rows[k] - a).cwiseAbs().maxCoeff() <= 1e-12) {
        rhs[k] = std::min(rhs[k], bi);
        merged = true;
        break;
      }
    if (!merged) {
      rows.push_back(a);
      rhs.push_back(bi);
    }
  }
  HRep out;
  const std::vector<int> eq = independent_rows(h.Ae, tol_.rank);
  out.Ae = select_rows(h.Ae, eq);
  out.be = select_entries(h.be, eq);
  if (out.Ae.rows() == 0) out.Ae.resize(0, n);

  const int m = static_cast<int>(rows.size());
  MatrixXd A(m, n);
  VectorXd b(m);
  for (int i = 0; i < m; ++i) {
    A.row(i) = rows[i].transpose();
    b(i) = rhs[i];
  }
  {
    const solver::LpResult feas = solver::solve_lp(lp_over(A, b, out.Ae, out.be, VectorXd::Zero(n)), tol_);
    if (feas.status == solver::SolveStatus::Infeasible) return empty(n, tol_);
  }
  std::vector<char> keep(m, 1);
  for (int i = 0; i < m; ++i) {
    std::vector<int> others;
    for (int k = 0; k < m; ++k)
      if (k != i && keep[k]) others.push_back(k);
    const solver::LpResult r =
        solver::solve_lp(lp_over(select_rows(A, others), select_entries(b, others), out.Ae, out.be,
                                 -A.row(i).transpose()),
                         tol_);
    if (r.optimal() && -r.objective <= b(i) + kRedundancyTol * std::max(1.0, std::abs(b(i)))) keep[i] = 0;
  }
  std::vector<int> kept;
  for (int i = 0; i < m; ++i)
    if (keep[i]) kept.push_back(i);
  out.A = select_rows(A, kept);
  out.b = select_entries(b, kept);
  if (out.A.rows() == 0) out.A.resize(0, n);
  Polytope p = make_h(std::move(out), n, tol_, false);
  return p;
}

Polytope Polytope::reduce() const {
  if (empty_) return *this;
  Polytope p = empty(dim_, tol_);
  p.empty_ = false;
  if (H_) {
    p = reduced_h();
    if (p.empty_) return p;
  }
  if (V_) {
    const double scale = std::max(1.0, V_->cwiseAbs().maxCoeff());
    p.V_ = geometry::convex_hull(geometry::unique_rows(*V_, 1e-12 * scale), tol_).vertices;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Queries

SupportResult Polytope::support(const VectorXd& v) const {
  require(v.size() == dim_, ErrorKind::DimensionMismatch, "direction has the wrong dimension");
  require(!empty_, ErrorKind::EmptySet, "support of an empty polytope");
  SupportResult out;
  if (V_) {
    Eigen::Index k = 0;
    out.value = (*V_ * v).maxCoeff(&k);
    out.point = V_->row(k).transpose();
    return out;
  }
  const solver::LpResult r = solver::solve_lp(lp_over(H_->A, H_->b, H_->Ae, H_->be, -v), tol_);
  if (r.status == solver::SolveStatus::Infeasible) fail(ErrorKind::EmptySet, "support of an empty polytope");
  if (!r.optimal()) fail(ErrorKind::IterationLimit, "support LP did not reach optimality");
  out.point = r.x;
  out.value = v.isZero(0) ? 0.0 : v.dot(r.x);
  return out;
}

bool Polytope::contains(const VectorXd& x) const {
  require(x.size() == dim_, ErrorKind::DimensionMismatch, "point has the wrong dimension");
  if (empty_) return false;
  if (H_) {
    for (int i = 0; i < H_->A.rows(); ++i) {
      const double nrm = H_->A.row(i).norm();
      if (H_->A.row(i).dot(x) - H_->b(i) > row_slack_tol(tol_, nrm, H_->b(i))) return false;
    }
    for (int i = 0; i < H_->Ae.rows(); ++i) {
      const double nrm = H_->Ae.row(i).norm();
      if (std::abs(H_->Ae.row(i).dot(x) - H_->be(i)) > row_slack_tol(tol_, nrm, H_->be(i))) return false;
    }
    return true;
  }
  // Convex-combination feasibility over the vertex weights.
  const int k = static_cast<int>(V_->rows());
  solver::LpProblem lp;
  lp.c = VectorXd::Zero(k);
  lp.A_eq.resize(dim_ + 1, k);
  lp.A_eq.topRows(dim_) = V_->transpose();
  lp.A_eq.row(dim_).setOnes();
  lp.b_eq.resize(dim_ + 1);
  lp.b_eq << x, 1.0;
  lp.lower = VectorXd::Zero(k);
  return solver::solve_lp(lp, tol_).optimal();
}

ProjectionResult Polytope::project(const VectorXd& v, Norm p) const {
  require(v.size() == dim_, ErrorKind::DimensionMismatch, "point has the wrong dimension");
  require(!empty_, ErrorKind::EmptySet, "projection onto an empty polytope");
  const int n = dim_;
  ProjectionResult out;
  if (p == Norm::L2) {
    if (H_) {
      solver::QpProblem qp;
      qp.Q = 2.0 * MatrixXd::Identity(n, n);
      qp.q = -2.0 * v;
      qp.A_ub = H_->A;
      qp.b_ub = H_->b;
      qp.A_eq = H_->Ae;
      qp.b_eq = H_->be;
      const solver::QpResult r = solver::solve_qp(qp, tol_);
      if (!r.optimal()) fail(ErrorKind::IterationLimit, "projection QP did not reach optimality");
      out.point = r.x;
    } else {
      const int k = static_cast<int>(V_->rows());
      solver::QpProblem qp;
      qp.Q = 2.0 * (*V_) * V_->transpose();
      qp.q = -2.0 * (*V_) * v;
      qp.A_eq = MatrixXd::Ones(1, k);
      qp.b_eq = VectorXd::Ones(1);
      qp.lower = VectorXd::Zero(k);
      const solver::QpResult r = solver::solve_qp(qp, tol_);
      if (!r.optimal()) fail(ErrorKind::IterationLimit, "projection QP did not reach optimality");
      out.point = V_->transpose() * r.x;
    }
    out.distance = (out.point - v).norm();
    return out;
  }
  const HRep h = hrep();
  // Epigraph LP over (x, t).
  const bool l1 = p == Norm::L1;
  const int nt = l1 ? n : 1;
  const int nv = n + nt;
  solver::LpProblem lp;
  lp.c = VectorXd::Zero(nv);
  lp.c.tail(nt).setOnes();
  lp.A_ub = MatrixXd::Zero(h.A.rows() + 2 * n, nv);
  lp.b_ub = VectorXd::Zero(h.A.rows() + 2 * n);
  lp.A_ub.topLeftCorner(h.A.rows(), n) = h.A;
  lp.b_ub.head(h.A.rows()) = h.b;
  for (int j = 0; j < n; ++j) {
    const int r0 = static_cast<int>(h.A.rows()) + 2 * j;
    const int tj = n + (l1 ? j : 0);
    lp.A_ub(r0, j) = 1.0;
    lp.A_ub(r0, tj) = -1.0;
    lp.b_ub(r0) = v(j);
    lp.A_ub(r0 + 1, j) = -1.0;
    lp.A_ub(r0 + 1, tj) = -1.0;
    lp.b_ub(r0 + 1) = -v(j);
  }
  if (h.Ae.rows()) {
    lp.A_eq = MatrixXd::Zero(h.Ae.rows(), nv);
    lp.A_eq.leftCols(n) = h.Ae;
    lp.b_eq = h.be;
  }
  const solver::LpResult r = solver::solve_lp(lp, tol_);
  if (!r.optimal()) fail(ErrorKind::IterationLimit, "projection LP did not reach optimality");
  out.point = r.x.head(n);
  out.distance = l1 ? (out.point - v).lpNorm<1>() : (out.point - v).lpNorm<Eigen::Infinity>();
  return out;
}

// ---------------------------------------------------------------------------
// Maps

Polytope Polytope::affine_map(const MatrixXd& M, const VectorXd& v) const {
  require(M.cols() == dim_, ErrorKind::DimensionMismatch, "map columns must equal the set dimension");
  const int m = static_cast<int>(M.rows());
  require(v.size() == 0 || v.size() == m, ErrorKind::DimensionMismatch, "offset has the wrong dimension");
  if (empty_) return empty(m, tol_);
  MatrixXd W = vertices() * M.transpose();
  if (v.size()) W.rowwise() += v.transpose();
  const geometry::HullResult h = geometry::convex_hull(W, tol_);
  Polytope p = make_h(HRep{h.A, h.b, h.Ae, h.be}, m, tol_, false);
  p.V_ = h.vertices;
  return p;
}

Polytope Polytope::translate(const VectorXd& v) const {
  require(v.size() == dim_, ErrorKind::DimensionMismatch, "translation has the wrong dimension");
  if (empty_) return *this;
  Polytope p = *this;
  if (p.V_) p.V_->rowwise() += v.transpose();
  if (p.H_) {
    p.H_->b += p.H_->A * v;
    p.H_->be += p.H_->Ae * v;
  }
  return p;
}

Polytope Polytope::inverse_affine_map(const MatrixXd& M) const {
  require(M.rows() == dim_ && M.cols() == dim_, ErrorKind::DimensionMismatch, "map must be square");
  Eigen::FullPivLU<MatrixXd> lu(M);
  lu.setThreshold(tol_.rank);
  if (!lu.isInvertible()) fail(ErrorKind::SingularMatrix, "inverse affine map needs an invertible matrix");
  if (empty_) return *this;
  Polytope p = *this;
  if (p.H_) {
    p.H_->A = p.H_->A * M;
    p.H_->Ae = p.H_->Ae * M;
  }
  if (p.V_) p.V_ = (lu.solve(p.V_->transpose())).transpose();
  return p;
}

// ---------------------------------------------------------------------------
// Intersections

Polytope Polytope::intersect_polyhedron(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae,
                                        const VectorXd& be) const {
  require(A.rows() == 0 || A.cols() == dim_, ErrorKind::DimensionMismatch, "halfspace dimension");
  require(Ae.rows() == 0 || Ae.cols() == dim_, ErrorKind::DimensionMismatch, "affine set dimension");
  require(b.size() == A.rows() && be.size() == Ae.rows(), ErrorKind::DimensionMismatch, "rhs sizes");
  if (empty_) return *this;
  HRep h = hrep();
  HRep out{vstack(h.A, A), vcat(h.b, b), vstack(h.Ae, Ae), vcat(h.be, be)};
  Polytope p = make_h(std::move(out), dim_, tol_, false);
  return p.reduced_h();
}

Polytope Polytope::intersect_halfspaces(const MatrixXd& A, const VectorXd& b) const {
  return intersect_polyhedron(A, b, MatrixXd(0, dim_), VectorXd(0));
}

Polytope Polytope::intersect_affine(const MatrixXd& Ae, const VectorXd& be) const {
  return intersect_polyhedron(MatrixXd(0, dim_), VectorXd(0), Ae, be);
}

Polytope Polytope::intersect_inverse_affine(const Polytope& W, const MatrixXd& R) const {
  require(R.cols() == dim_ && R.rows() == W.dim(), ErrorKind::DimensionMismatch, "R must map into W");
  if (empty_) return *this;
  if (W.is_empty()) return empty(dim_, tol_);
  const HRep w = W.hrep();
  return intersect_polyhedron(w.A * R, w.b, w.Ae * R, w.be);
}

Polytope intersect(const Polytope& P, const Polytope& Q) {
  require(P.dim() == Q.dim(), ErrorKind::DimensionMismatch, "intersection operands differ in dimension");
  if (P.is_empty()) return P;
  if (Q.is_empty()) return Q;
  const Polytope Qh = Q.to_hrep();
  return P.intersect_polyhedron(Qh.A(), Qh.b(), Qh.Ae(), Qh.be());
}

// ---------------------------------------------------------------------------
// Projection, slicing, products

Polytope Polytope::project_away(const std::vector<int>& dims) const {
  check_dims(dims, dim_, false);
  std::vector<int> keep;
  for (int j = 0; j < dim_; ++j)
    if (std::find(dims.begin(), dims.end(), j) == dims.end()) keep.push_back(j);
  if (dims.empty()) return *this;
  MatrixXd M = MatrixXd::Zero(keep.size(), dim_);
  for (std::size_t k = 0; k < keep.size(); ++k) M(k, keep[k]) = 1.0;
  return affine_map(M);
}

Polytope Polytope::slice(const std::vector<int>& dims, const VectorXd& values) const {
  check_dims(dims, dim_, true);
  require(values.size() == static_cast<int>(dims.size()), ErrorKind::BadDims, "one value per sliced dimension");
  MatrixXd Ae = MatrixXd::Zero(dims.size(), dim_);
  for (std::size_t k = 0; k < dims.size(); ++k) Ae(k, dims[k]) = 1.0;
  return intersect_affine(Ae, values);
}

Polytope Polytope::cartesian_power(int m) const {
  require(m >= 1, ErrorKind::InvalidArgument, "power must be at least 1");
  if (m == 1) return *this;
  if (empty_) return empty(dim_ * m, tol_);
  const HRep h = hrep();
  HRep out;
  out.A = MatrixXd::Zero(h.A.rows() * m, dim_ * m);
  out.b.resize(h.A.rows() * m);
  out.Ae = MatrixXd::Zero(h.Ae.rows() * m, dim_ * m);
  out.be.resize(h.Ae.rows() * m);
  for (int k = 0; k < m; ++k) {
    out.A.block(k * h.A.rows(), k * dim_, h.A.rows(), dim_) = h.A;
    out.b.segment(k * h.A.rows(), h.A.rows()) = h.b;
    out.Ae.block(k * h.Ae.rows(), k * dim_, h.Ae.rows(), dim_) = h.Ae;
    out.be.segment(k * h.Ae.rows(), h.Ae.rows()) = h.be;
  }
  return make_h(std::move(out), dim_ * m, tol_, false);
}

// ---------------------------------------------------------------------------
// Binary operations

Polytope minkowski_sum(const Polytope& P, const Polytope& Q) {
  require(P.dim() == Q.dim(), ErrorKind::DimensionMismatch, "Minkowski sum operands differ in dimension");
  if (P.is_empty()) return P;
  if (Q.is_empty()) return Q;
  const MatrixXd Vp = P.vertices();
  const MatrixXd Vq = Q.vertices();
  MatrixXd W(Vp.rows() * Vq.rows(), P.dim());
  for (int i = 0; i < Vp.rows(); ++i)
    for (int j = 0; j < Vq.rows(); ++j) W.row(i * Vq.rows() + j) = Vp.row(i) + Vq.row(j);
  const geometry::HullResult h = geometry::convex_hull(W, P.tolerance());
  Polytope out = Polytope::make_h(Polytope::HRep{h.A, h.b, h.Ae, h.be}, P.dim(), P.tolerance(), false);
  out.V_ = h.vertices;
  return out;
}

namespace {

template <class Set>
Polytope tighten(const Polytope& P, const Set& S) {
  require(P.dim() == S.dim(), ErrorKind::DimensionMismatch, "Pontryagin difference operands differ in dimension");
  if (P.is_empty()) return P;
  if (S.is_empty()) fail(ErrorKind::EmptySet, "Pontryagin difference by an empty set is unbounded");
  const Polytope Ph = P.to_hrep();
  MatrixXd A = Ph.A();
  VectorXd b = Ph.b();
  MatrixXd Ae = Ph.Ae();
  VectorXd be = Ph.be();
  for (int i = 0; i < A.rows(); ++i) b(i) -= S.support(A.row(i).transpose()).value;
  for (int i = 0; i < Ae.rows(); ++i) {
    const VectorXd a = Ae.row(i).transpose();
    const double hi = S.support(a).value;
    const double lo = -S.support(-a).value;
    if (hi - lo > row_slack_tol(P.tolerance(), a.norm(), be(i))) return Polytope::empty(P.dim(), P.tolerance());
    be(i) -= hi;
  }
  // The boundedness check doubles as the emptiness test.
  return Polytope::from_halfspaces(A, b, Ae, be, P.tolerance());
}

template <class Set>
bool contained_by_support(const Polytope& P, const Set& Y) {
  require(P.dim() == Y.dim(), ErrorKind::DimensionMismatch, "containment operands differ in dimension");
  if (Y.is_empty()) return true;
  if (P.is_empty()) return false;
  const Polytope Ph = P.to_hrep();
  const Tolerance& tol = P.tolerance();
  for (int i = 0; i < Ph.A().rows(); ++i) {
    const VectorXd a = Ph.A().row(i).transpose();
    if (Y.support(a).value > Ph.b()(i) + row_slack_tol(tol, a.norm(), Ph.b()(i))) return false;
  }
  for (int i = 0; i < Ph.Ae().rows(); ++i) {
    const VectorXd a = Ph.Ae().row(i).transpose();
    const double slack = row_slack_tol(tol, a.norm(), Ph.be()(i));
    if (Y.support(a).value > Ph.be()(i) + slack) return false;
    if (-Y.support(-a).value < Ph.be()(i) - slack) return false;
  }
  return true;
}

}  // namespace

Polytope pontryagin_difference(const Polytope& P, const Polytope& S) { return tighten(P, S); }
Polytope pontryagin_difference(const Polytope& P, const ConstrainedZonotope& S) { return tighten(P, S); }
Polytope pontryagin_difference(const Polytope& P, const Ellipsoid& S) { return tighten(P, S); }

bool contains_set(const Polytope& P, const Polytope& Y) { return contained_by_support(P, Y); }
bool contains_set(const Polytope& P, const ConstrainedZonotope& Y) { return contained_by_support(P, Y); }
bool contains_set(const Polytope& P, const Ellipsoid& Y) { return contained_by_support(P, Y); }

bool set_equal(const Polytope& P, const Polytope& Q) {
  if (P.dim() != Q.dim()) return false;
  if (P.is_empty() || Q.is_empty()) return P.is_empty() && Q.is_empty();
  return contains_set(P, Q) && contains_set(Q, P);
}

// ---------------------------------------------------------------------------
// Measures and centers

double Polytope::volume() const {
  if (empty_) return 0.0;
  if (dim_ > kVolumeDimCap)
    fail(ErrorKind::DimensionCap, "exact volume is capped at dimension 6; use a sampling estimate instead");
  if (!is_full_dimensional()) fail(ErrorKind::EmptyInterior, "volume needs a full-dimensional polytope");
  const MatrixXd V = vertices();
  // Axis-aligned boxes: product of widths, exact in floating point for dyadic sides.
  const VectorXd lo = V.colwise().minCoeff().transpose();
  const VectorXd hi = V.colwise().maxCoeff().transpose();
  std::set<unsigned> corners;
  bool box = true;
  for (Eigen::Index i = 0; box && i < V.rows(); ++i) {
    unsigned mask = 0;
    for (int j = 0; box && j < dim_; ++j) {
      box = V(i, j) == lo(j) || V(i, j) == hi(j);
      if (V(i, j) == hi(j)) mask |= 1u << j;
    }
    corners.insert(mask);
  }
  if (box && corners.size() == (std::size_t{1} << dim_)) return (hi - lo).prod();
  return facet_fan_volume(V);
}

std::pair<VectorXd, VectorXd> Polytope::bounding_box() const {
  require(!empty_, ErrorKind::EmptySet, "bounding box of an empty polytope");
  if (V_) return {V_->colwise().minCoeff().transpose(), V_->colwise().maxCoeff().transpose()};
  VectorXd lo(dim_), hi(dim_);
  for (int j = 0; j < dim_; ++j) {
    hi(j) = support(VectorXd::Unit(dim_, j)).value;
    lo(j) = -support(-VectorXd::Unit(dim_, j)).value;
  }
  return {lo, hi};
}

CenteringResult Polytope::centering(CenteringKind kind) const {
  require(!empty_, ErrorKind::EmptySet, "centering of an empty polytope");
  CenteringResult out;
  out.kind = kind;
  switch (kind) {
    case CenteringKind::Chebyshev: {
      const HRep h = hrep();
      if (h.Ae.rows() > 0) fail(ErrorKind::EmptyInterior, "set has equality constraints");
      const solver::ChebyshevBall ball = solver::chebyshev_ball(h.A, h.b, tol_);
      const double scale = std::max(1.0, h.b.size() ? h.b.cwiseAbs().maxCoeff() : 0.0);
      if (!ball.feasible || ball.radius <= 1e-9 * scale) fail(ErrorKind::EmptyInterior, "no interior ball fits");
      out.center = ball.center;
      out.radius = ball.radius;
      return out;
    }
    case CenteringKind::InscribedEllipsoid: {
      const HRep h = hrep();
      if (h.Ae.rows() > 0) fail(ErrorKind::EmptyInterior, "set has equality constraints");
      const solver::InscribedEllipsoid e = solver::mvie_of_halfspaces(h.A, h.b, tol_);
      out.center = e.center;
      const MatrixXd Binv = e.B.inverse();
      out.shape = Binv * Binv;
      out.shape = 0.5 * (out.shape + out.shape.transpose());
      out.radius = e.B.determinant();
      return out;
    }
    case CenteringKind::CircumscribedEllipsoid: {
      const solver::EnclosingEllipsoid e = solver::mvee_of_points(vertices());
      out.center = e.center;
      out.shape = e.shape;
      return out;
    }
    case CenteringKind::CircumscribedRect: {
      auto [lo, hi] = bounding_box();
      out.center = 0.5 * (lo + hi);
      out.lower = lo;
      out.upper = hi;
      return out;
    }
  }
  return out;
}

VectorXd Polytope::interior_point(InteriorKind kind) const {
  require(!empty_, ErrorKind::EmptySet, "interior point of an empty polytope");
  if (kind == InteriorKind::Centroid) return vertices().colwise().mean().transpose();
  if (V_ && !H_) {
    // Relative interior through the halfspace form of the hull.
    return to_hrep().interior_point(kind);
  }
  const HRep& h = *H_;
  if (h.Ae.rows() == 0) {
    const solver::ChebyshevBall ball = solver::chebyshev_ball(h.A, h.b, tol_);
    if (!ball.feasible) fail(ErrorKind::EmptySet, "interior point of an empty polytope");
    return ball.center;
  }
  // Chebyshev center inside the affine hull of the equality rows.
  const std::vector<int> rows = independent_rows(h.Ae, tol_.rank);
  const MatrixXd E = select_rows(h.Ae, rows);
  const VectorXd xp = E.completeOrthogonalDecomposition().solve(select_entries(h.be, rows));
  const MatrixXd Z = null_space(E, tol_.rank);
  if (Z.cols() == 0) return xp;
  const solver::ChebyshevBall ball = solver::chebyshev_ball(h.A * Z, h.b - h.A * xp, tol_);
  if (!ball.feasible) fail(ErrorKind::EmptySet, "interior point of an empty polytope");
  return xp + Z * ball.center;
}

std::string Polytope::describe() const {
  std::ostringstream os;
  if (empty_) {
    os << "Empty Polytope in R^" << dim_;
    return os.str();
  }
  os << "Polytope in R^" << dim_ << ' ';
  if (V_ && H_) os << "in H-Rep and V-Rep";
  else if (V_) os << "in only V-Rep";
  else os << "in only H-Rep";
  if (H_) {
    os << "\n\tIn H-rep: " << H_->A.rows() << " inequalities and ";
    if (H_->Ae.rows() == 0) os << "no equality constraints";
    else os << H_->Ae.rows() << " equality constraints";
  }
  if (V_) os << "\n\tIn V-rep: " << V_->rows() << " vertices";
  return os.str();
}

}  // namespace cvxset
