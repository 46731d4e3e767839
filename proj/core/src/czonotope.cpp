#include "cvxset/czonotope.hpp"

#include "cvxset/approximation.hpp"
#include "cvxset/error.hpp"
#include "cvxset/hull.hpp"
#include "cvxset/lp.hpp"
#include "cvxset/qp.hpp"

#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

namespace cvxset {

namespace {

constexpr int kExactMaxGenerators = 4;
constexpr int kExactMaxLatent = 256;
constexpr int kSubtrahendVertexGenerators = 8;
constexpr double kInf = std::numeric_limits<double>::infinity();

// LP over (xi, extra...) with xi boxed to [-1, 1] and the extras free unless given.
solver::LpProblem latent_lp(int N, int extra) {
  solver::LpProblem lp;
  lp.c = VectorXd::Zero(N + extra);
  lp.lower = VectorXd::Constant(N + extra, -kInf);
  lp.upper = VectorXd::Constant(N + extra, kInf);
  lp.lower.head(N).setConstant(-1.0);
  lp.upper.head(N).setConstant(1.0);
  return lp;
}

MatrixXd block_diag_rows(const MatrixXd& A, int cols_a, const MatrixXd& B, int cols_b) {
  MatrixXd out = MatrixXd::Zero(A.rows() + B.rows(), cols_a + cols_b);
  if (A.rows()) out.topLeftCorner(A.rows(), cols_a) = A;
  if (B.rows()) out.bottomRightCorner(B.rows(), cols_b) = B;
  return out;
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

}  // namespace

std::string_view to_string(DifferenceStrategy s) {
  switch (s) {
    case DifferenceStrategy::ExactRecursive: return "exact_recursive";
    case DifferenceStrategy::ScaledInner: return "scaled_inner";
    case DifferenceStrategy::Auto: return "auto";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Construction

ConstrainedZonotope ConstrainedZonotope::unchecked(MatrixXd G, VectorXd c, MatrixXd Ae, VectorXd be, bool empty,
                                                   const Tolerance& tol) {
  ConstrainedZonotope z;
  const int n = static_cast<int>(c.size());
  if (G.rows() == 0 && G.cols() == 0) G.resize(n, 0);
  if (Ae.rows() == 0) Ae.resize(0, G.cols());
  z.G_ = std::move(G);
  z.c_ = std::move(c);
  z.Ae_ = std::move(Ae);
  z.be_ = std::move(be);
  z.be_.conservativeResize(z.Ae_.rows());
  z.empty_ = empty;
  z.tol_ = tol;
  return z;
}

ConstrainedZonotope::ConstrainedZonotope(const MatrixXd& G, const VectorXd& c, const MatrixXd& Ae,
                                         const VectorXd& be, const Tolerance& tol) {
  tol.validate();
  const int n = static_cast<int>(c.size());
  const bool g_empty = G.size() == 0;
  require(g_empty || G.rows() == n, ErrorKind::DimensionMismatch, "G rows must equal the center dimension");
  const int N = g_empty ? static_cast<int>(G.cols()) : static_cast<int>(G.cols());
  require(Ae.rows() == 0 || Ae.cols() == N, ErrorKind::DimensionMismatch, "Ae columns must equal latent dimension");
  require(be.size() == Ae.rows(), ErrorKind::DimensionMismatch, "be must match rows of Ae");
  require(G.allFinite() && c.allFinite() && Ae.allFinite() && be.allFinite(), ErrorKind::InvalidArgument,
          "constrained zonotope data must be finite");
  G_ = g_empty ? MatrixXd(n, N) : G;
  c_ = c;
  Ae_ = Ae.rows() ? Ae : MatrixXd(0, N);
  be_ = be;
  tol_ = tol;
  empty_ = !latent_feasible();
}

bool ConstrainedZonotope::latent_feasible() const {
  if (Ae_.rows() == 0) return true;
  solver::LpProblem lp = latent_lp(latent_dim(), 0);
  lp.A_eq = Ae_;
  lp.b_eq = be_;
  const solver::LpResult r = solver::solve_lp(lp, tol_);
  if (r.status == solver::SolveStatus::IterationLimit)
    fail(ErrorKind::IterationLimit, "latent feasibility LP hit the iteration cap");
  return r.optimal();
}

ConstrainedZonotope ConstrainedZonotope::zonotope(const MatrixXd& G, const VectorXd& c, const Tolerance& tol) {
  return ConstrainedZonotope(G, c, MatrixXd(), VectorXd(), tol);
}

ConstrainedZonotope ConstrainedZonotope::rect(const VectorXd& lower, const VectorXd& upper, const Tolerance& tol) {
  require(lower.size() == upper.size(), ErrorKind::DimensionMismatch, "bounds differ in length");
  require(((upper - lower).array() >= 0).all(), ErrorKind::InvalidArgument, "rect requires lower <= upper");
  const VectorXd h = 0.5 * (upper - lower);
  return zonotope(h.asDiagonal().toDenseMatrix(), 0.5 * (upper + lower), tol);
}

ConstrainedZonotope ConstrainedZonotope::rect_centered(const VectorXd& center, const VectorXd& half_width,
                                                       const Tolerance& tol) {
  require(center.size() == half_width.size(), ErrorKind::DimensionMismatch, "center and half-width differ");
  require((half_width.array() >= 0).all(), ErrorKind::InvalidArgument, "half-widths must be nonnegative");
  return zonotope(half_width.asDiagonal().toDenseMatrix(), center, tol);
}

ConstrainedZonotope ConstrainedZonotope::singleton(const VectorXd& x, const Tolerance& tol) {
  return zonotope(MatrixXd(x.size(), 0), x, tol);
}

ConstrainedZonotope ConstrainedZonotope::empty(int dim, const Tolerance& tol) {
  MatrixXd Ae(1, 0);
  VectorXd be = VectorXd::Ones(1);
  return unchecked(MatrixXd(dim, 0), VectorXd::Zero(dim), Ae, be, true, tol);
}

ConstrainedZonotope ConstrainedZonotope::from_polytope(const Polytope& P) {
  require(!P.is_empty(), ErrorKind::EmptySet, "cannot lift an empty polytope");
  const Polytope Ph = P.to_hrep();
  const int n = P.dim();
  const auto [lo, hi] = Ph.bounding_box();
  const VectorXd cx = 0.5 * (lo + hi);
  const VectorXd hx = 0.5 * (hi - lo);
  const MatrixXd& A = Ph.A();
  const VectorXd& b = Ph.b();
  const int m = static_cast<int>(A.rows());
  const int me = static_cast<int>(Ph.Ae().rows());

  MatrixXd G = MatrixXd::Zero(n, n + m);
  G.leftCols(n) = hx.asDiagonal();
  MatrixXd Ae = MatrixXd::Zero(m + me, n + m);
  VectorXd be(m + me);
  for (int i = 0; i < m; ++i) {
    const VectorXd a = A.row(i).transpose();
    const double smax = b(i) + Ph.support(-a).value;
    Ae.block(i, 0, 1, n) = (a.cwiseProduct(hx)).transpose();
    Ae(i, n + i) = 0.5 * smax;
    be(i) = b(i) - a.dot(cx) - 0.5 * smax;
  }
  for (int i = 0; i < me; ++i) {
    const VectorXd a = Ph.Ae().row(i).transpose();
    Ae.block(m + i, 0, 1, n) = (a.cwiseProduct(hx)).transpose();
    be(m + i) = Ph.be()(i) - a.dot(cx);
  }
  return unchecked(G, cx, Ae, be, false, P.tolerance());
}

ConstrainedZonotope ConstrainedZonotope::interval_hull(const Ellipsoid& E) {
  return zonotope(E.interval_half_widths().asDiagonal().toDenseMatrix(), E.c(), E.tolerance());
}

ConstrainedZonotope ConstrainedZonotope::with_tolerance(const Tolerance& tol) const {
  tol.validate();
  ConstrainedZonotope z = *this;
  z.tol_ = tol;
  return z;
}

ConstrainedZonotope ConstrainedZonotope::remove_redundancy() const {
  if (empty_) return *this;
  std::vector<int> cols;
  for (int j = 0; j < latent_dim(); ++j) {
    const bool g_zero = G_.col(j).cwiseAbs().maxCoeff() == 0.0 || G_.rows() == 0;
    const bool a_zero = Ae_.rows() == 0 || Ae_.col(j).cwiseAbs().maxCoeff() == 0.0;
    if (!(g_zero && a_zero)) cols.push_back(j);
  }
  MatrixXd G(dim(), cols.size());
  MatrixXd Ae(Ae_.rows(), cols.size());
  for (std::size_t k = 0; k < cols.size(); ++k) {
    G.col(k) = G_.col(cols[k]);
    if (Ae_.rows()) Ae.col(k) = Ae_.col(cols[k]);
  }
  const std::vector<int> rows = independent_rows(Ae, tol_.rank);
  return unchecked(G, c_, select_rows(Ae, rows), select_entries(be_, rows), false, tol_);
}

// ---------------------------------------------------------------------------
// Conversion

Polytope ConstrainedZonotope::to_polytope(int cap) const {
  require(!empty_, ErrorKind::EmptySet, "conversion of an empty constrained zonotope");
  const ConstrainedZonotope z = remove_redundancy();
  const int N = z.latent_dim();
  if (N > cap) fail(ErrorKind::LatentDimCap, "latent dimension exceeds the conversion cap");
  if (N == 0) return Polytope::from_vertices(c_.transpose(), tol_);
  MatrixXd box(2 * N, N);
  box << MatrixXd::Identity(N, N), -MatrixXd::Identity(N, N);
  const MatrixXd Xi = geometry::enumerate_vertices(box, VectorXd::Ones(2 * N), z.Ae_, z.be_, tol_);
  if (Xi.rows() == 0) return Polytope::empty(dim(), tol_);
  MatrixXd X = Xi * z.G_.transpose();
  X.rowwise() += c_.transpose();
  return Polytope::from_vertices(X, tol_).to_hrep();
}

// ---------------------------------------------------------------------------
// Queries

SupportResult ConstrainedZonotope::support(const VectorXd& v) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "direction has the wrong dimension");
  require(!empty_, ErrorKind::EmptySet, "support of an empty constrained zonotope");
  SupportResult out;
  const VectorXd w = G_.transpose() * v;
  if (Ae_.rows() == 0) {
    const VectorXd xi = w.unaryExpr([](double t) { return t > 0 ? 1.0 : (t < 0 ? -1.0 : 0.0); });
    out.point = G_ * xi + c_;
    out.value = v.dot(c_) + w.lpNorm<1>();
    return out;
  }
  solver::LpProblem lp = latent_lp(latent_dim(), 0);
  lp.c = -w;
  lp.A_eq = Ae_;
  lp.b_eq = be_;
  const solver::LpResult r = solver::solve_lp(lp, tol_);
  if (r.status == solver::SolveStatus::Infeasible) fail(ErrorKind::EmptySet, "latent slice is empty");
  if (!r.optimal()) fail(ErrorKind::IterationLimit, "support LP did not reach optimality");
  out.point = G_ * r.x + c_;
  out.value = v.dot(c_) + w.dot(r.x);
  return out;
}

bool ConstrainedZonotope::contains(const VectorXd& x) const {
  require(x.size() == dim(), ErrorKind::DimensionMismatch, "point has the wrong dimension");
  if (empty_) return false;
  if (latent_dim() == 0) return (x - c_).cwiseAbs().maxCoeff() <= tol_.feas * std::max(1.0, c_.cwiseAbs().maxCoeff());
  solver::LpProblem lp = latent_lp(latent_dim(), 0);
  lp.A_eq = vstack(G_, Ae_);
  lp.b_eq = vcat(x - c_, be_);
  return solver::solve_lp(lp, tol_).optimal();
}

ProjectionResult ConstrainedZonotope::project(const VectorXd& v, Norm p) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "point has the wrong dimension");
  require(!empty_, ErrorKind::EmptySet, "projection onto an empty constrained zonotope");
  const int n = dim();
  const int N = latent_dim();
  ProjectionResult out;
  if (p == Norm::L2) {
    solver::QpProblem qp;
    qp.Q = 2.0 * G_.transpose() * G_;
    qp.q = 2.0 * G_.transpose() * (c_ - v);
    qp.A_eq = Ae_;
    qp.b_eq = be_;
    qp.lower = VectorXd::Constant(N, -1.0);
    qp.upper = VectorXd::Constant(N, 1.0);
    const solver::QpResult r = solver::solve_qp(qp, tol_);
    if (!r.optimal()) fail(ErrorKind::IterationLimit, "projection QP did not reach optimality");
    out.point = G_ * r.x + c_;
    out.distance = (out.point - v).norm();
    return out;
  }
  const bool l1 = p == Norm::L1;
  const int nt = l1 ? n : 1;
  solver::LpProblem lp = latent_lp(N, nt);
  lp.c.tail(nt).setOnes();
  lp.A_ub = MatrixXd::Zero(2 * n, N + nt);
  lp.b_ub.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    const int tj = N + (l1 ? j : 0);
    lp.A_ub.block(2 * j, 0, 1, N) = G_.row(j);
    lp.A_ub(2 * j, tj) = -1.0;
    lp.b_ub(2 * j) = v(j) - c_(j);
    lp.A_ub.block(2 * j + 1, 0, 1, N) = -G_.row(j);
    lp.A_ub(2 * j + 1, tj) = -1.0;
    lp.b_ub(2 * j + 1) = c_(j) - v(j);
  }
  if (Ae_.rows()) {
    lp.A_eq = MatrixXd::Zero(Ae_.rows(), N + nt);
    lp.A_eq.leftCols(N) = Ae_;
    lp.b_eq = be_;
  }
  const solver::LpResult r = solver::solve_lp(lp, tol_);
  if (!r.optimal()) fail(ErrorKind::IterationLimit, "projection LP did not reach optimality");
  out.point = G_ * r.x.head(N) + c_;
  out.distance = l1 ? (out.point - v).lpNorm<1>() : (out.point - v).lpNorm<Eigen::Infinity>();
  return out;
}

VectorXd ConstrainedZonotope::interior_point() const {
  require(!empty_, ErrorKind::EmptySet, "interior point of an empty constrained zonotope");
  if (Ae_.rows() == 0) return c_;
  const int N = latent_dim();
  solver::LpProblem lp = latent_lp(N, 1);
  lp.c(N) = 1.0;
  lp.lower(N) = 0.0;
  lp.upper(N) = 1.0;
  lp.A_ub = MatrixXd::Zero(2 * N, N + 1);
  lp.A_ub.topLeftCorner(N, N) = MatrixXd::Identity(N, N);
  lp.A_ub.bottomLeftCorner(N, N) = -MatrixXd::Identity(N, N);
  lp.A_ub.col(N).setConstant(-1.0);
  lp.b_ub = VectorXd::Zero(2 * N);
  lp.A_eq = MatrixXd::Zero(Ae_.rows(), N + 1);
  lp.A_eq.leftCols(N) = Ae_;
  lp.b_eq = be_;
  const solver::LpResult r = solver::solve_lp(lp, tol_);
  if (r.status == solver::SolveStatus::Infeasible) fail(ErrorKind::EmptySet, "latent slice is empty");
  if (!r.optimal()) fail(ErrorKind::IterationLimit, "interior point LP did not reach optimality");
  return G_ * r.x.head(N) + c_;
}

std::pair<VectorXd, VectorXd> ConstrainedZonotope::bounding_box() const {
  require(!empty_, ErrorKind::EmptySet, "bounding box of an empty constrained zonotope");
  const int n = dim();
  VectorXd lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    hi(j) = support(VectorXd::Unit(n, j)).value;
    lo(j) = -support(-VectorXd::Unit(n, j)).value;
  }
  return {lo, hi};
}

// ---------------------------------------------------------------------------
// Maps

ConstrainedZonotope ConstrainedZonotope::affine_map(const MatrixXd& M, const VectorXd& v) const {
  require(M.cols() == dim(), ErrorKind::DimensionMismatch, "map columns must equal the set dimension");
  require(v.size() == 0 || v.size() == M.rows(), ErrorKind::DimensionMismatch, "offset has the wrong dimension");
  if (empty_) return empty(static_cast<int>(M.rows()), tol_);
  VectorXd c = M * c_;
  if (v.size()) c += v;
  return unchecked(M * G_, c, Ae_, be_, false, tol_);
}

ConstrainedZonotope ConstrainedZonotope::translate(const VectorXd& v) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "translation has the wrong dimension");
  ConstrainedZonotope z = *this;
  if (!empty_) z.c_ += v;
  return z;
}

ConstrainedZonotope ConstrainedZonotope::inverse_affine_map(const MatrixXd& M) const {
  require(M.rows() == dim() && M.cols() == dim(), ErrorKind::DimensionMismatch, "map must be square");
  Eigen::FullPivLU<MatrixXd> lu(M);
  lu.setThreshold(tol_.rank);
  if (!lu.isInvertible()) fail(ErrorKind::SingularMatrix, "inverse affine map needs an invertible matrix");
  if (empty_) return *this;
  return unchecked(lu.solve(G_), lu.solve(c_), Ae_, be_, false, tol_);
}

// ---------------------------------------------------------------------------
// Intersections

ConstrainedZonotope ConstrainedZonotope::intersect_polyhedron(const MatrixXd& A, const VectorXd& b,
                                                              const MatrixXd& Ae, const VectorXd& be) const {
  require(A.rows() == 0 || A.cols() == dim(), ErrorKind::DimensionMismatch, "halfspace dimension");
  require(Ae.rows() == 0 || Ae.cols() == dim(), ErrorKind::DimensionMismatch, "affine set dimension");
  require(b.size() == A.rows() && be.size() == Ae.rows(), ErrorKind::DimensionMismatch, "rhs sizes");
  if (empty_) return *this;
  const int n = dim();
  const int N = latent_dim();

  // Halfspace rows that can cut the set, each with a slack in [0, s] written as
  // s/2 (1 + xi_new). The upper bound s comes from the zonotope relaxation, which
  // over-estimates the true range and so leaves the constraint exact.
  std::vector<int> cut;
  std::vector<double> smax;
  for (int i = 0; i < A.rows(); ++i) {
    const VectorXd a = A.row(i).transpose();
    const double center = a.dot(c_);
    const double radius = (G_.transpose() * a).lpNorm<1>();
    const double slack_tol = tol_.feas * std::max({1.0, std::abs(b(i)), a.norm()});
    if (center + radius <= b(i)) continue;
    if (center - radius > b(i) + slack_tol) return empty(n, tol_);
    cut.push_back(i);
    smax.push_back(std::max(0.0, b(i) - (center - radius)));
  }
  const int k = static_cast<int>(cut.size());
  const int me = static_cast<int>(Ae.rows());
  MatrixXd G = MatrixXd::Zero(n, N + k);
  G.leftCols(N) = G_;
  MatrixXd E = MatrixXd::Zero(Ae_.rows() + k + me, N + k);
  VectorXd f(Ae_.rows() + k + me);
  if (Ae_.rows()) E.topLeftCorner(Ae_.rows(), N) = Ae_;
  f.head(Ae_.rows()) = be_;
  for (int t = 0; t < k; ++t) {
    const int r = static_cast<int>(Ae_.rows()) + t;
    const VectorXd a = A.row(cut[t]).transpose();
    E.block(r, 0, 1, N) = (G_.transpose() * a).transpose();
    E(r, N + t) = 0.5 * smax[t];
    f(r) = b(cut[t]) - a.dot(c_) - 0.5 * smax[t];
  }
  for (int t = 0; t < me; ++t) {
    const int r = static_cast<int>(Ae_.rows()) + k + t;
    const VectorXd a = Ae.row(t).transpose();
    E.block(r, 0, 1, N) = (G_.transpose() * a).transpose();
    f(r) = be(t) - a.dot(c_);
  }
  ConstrainedZonotope z = unchecked(G, c_, E, f, false, tol_);
  z.empty_ = !z.latent_feasible();
  return z;
}

ConstrainedZonotope ConstrainedZonotope::intersect_halfspaces(const MatrixXd& A, const VectorXd& b) const {
  return intersect_polyhedron(A, b, MatrixXd(0, dim()), VectorXd(0));
}

ConstrainedZonotope ConstrainedZonotope::intersect_affine(const MatrixXd& Ae, const VectorXd& be) const {
  return intersect_polyhedron(MatrixXd(0, dim()), VectorXd(0), Ae, be);
}

ConstrainedZonotope intersect(const ConstrainedZonotope& X, const ConstrainedZonotope& Y, const MatrixXd& R_in) {
  const MatrixXd R = R_in.size() ? R_in : MatrixXd::Identity(X.dim(), X.dim());
  require(R.cols() == X.dim() && R.rows() == Y.dim(), ErrorKind::DimensionMismatch, "R must map X into Y");
  if (X.is_empty()) return X;
  if (Y.is_empty()) return ConstrainedZonotope::empty(X.dim(), X.tolerance());
  const int N1 = X.latent_dim();
  const int N2 = Y.latent_dim();
  MatrixXd G = MatrixXd::Zero(X.dim(), N1 + N2);
  G.leftCols(N1) = X.G_;
  MatrixXd Ae = block_diag_rows(X.Ae_, N1, Y.Ae_, N2);
  MatrixXd coupling(Y.dim(), N1 + N2);
  coupling.leftCols(N1) = R * X.G_;
  coupling.rightCols(N2) = -Y.G_;
  ConstrainedZonotope z =
      ConstrainedZonotope::unchecked(G, X.c_, vstack(Ae, coupling), vcat(vcat(X.be_, Y.be_), Y.c_ - R * X.c_),
                                     false, X.tolerance());
  z.empty_ = !z.latent_feasible();
  return z;
}

ConstrainedZonotope intersect(const ConstrainedZonotope& X, const Polytope& Y, const MatrixXd& R_in) {
  const MatrixXd R = R_in.size() ? R_in : MatrixXd::Identity(X.dim(), X.dim());
  require(R.cols() == X.dim() && R.rows() == Y.dim(), ErrorKind::DimensionMismatch, "R must map X into Y");
  if (X.is_empty()) return X;
  if (Y.is_empty()) return ConstrainedZonotope::empty(X.dim(), X.tolerance());
  const Polytope Yh = Y.to_hrep();
  return X.intersect_polyhedron(Yh.A() * R, Yh.b(), Yh.Ae() * R, Yh.be());
}

// ---------------------------------------------------------------------------
// Projection, slicing, products

ConstrainedZonotope ConstrainedZonotope::project_away(const std::vector<int>& dims) const {
  check_dims(dims, dim(), false);
  if (dims.empty()) return *this;
  std::vector<int> keep;
  for (int j = 0; j < dim(); ++j)
    if (std::find(dims.begin(), dims.end(), j) == dims.end()) keep.push_back(j);
  MatrixXd M = MatrixXd::Zero(keep.size(), dim());
  for (std::size_t k = 0; k < keep.size(); ++k) M(k, keep[k]) = 1.0;
  return affine_map(M);
}

ConstrainedZonotope ConstrainedZonotope::slice(const std::vector<int>& dims, const VectorXd& values) const {
  check_dims(dims, dim(), true);
  require(values.size() == static_cast<int>(dims.size()), ErrorKind::BadDims, "one value per sliced dimension");
  MatrixXd E = MatrixXd::Zero(dims.size(), dim());
  for (std::size_t k = 0; k < dims.size(); ++k) E(k, dims[k]) = 1.0;
  return intersect_affine(E, values);
}

ConstrainedZonotope ConstrainedZonotope::cartesian_power(int m) const {
  require(m >= 1, ErrorKind::InvalidArgument, "power must be at least 1");
  if (m == 1) return *this;
  const int n = dim();
  if (empty_) return empty(n * m, tol_);
  const int N = latent_dim();
  const int M = num_equalities();
  MatrixXd G = MatrixXd::Zero(n * m, N * m);
  VectorXd c(n * m);
  MatrixXd Ae = MatrixXd::Zero(M * m, N * m);
  VectorXd be(M * m);
  for (int k = 0; k < m; ++k) {
    G.block(k * n, k * N, n, N) = G_;
    c.segment(k * n, n) = c_;
    if (M) {
      Ae.block(k * M, k * N, M, N) = Ae_;
      be.segment(k * M, M) = be_;
    }
  }
  return unchecked(G, c, Ae, be, false, tol_);
}

ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& X, const ConstrainedZonotope& Y) {
  require(X.dim() == Y.dim(), ErrorKind::DimensionMismatch, "Minkowski sum operands differ in dimension");
  if (X.is_empty()) return X;
  if (Y.is_empty()) return Y;
  const int N1 = X.latent_dim();
  const int N2 = Y.latent_dim();
  MatrixXd G(X.dim(), N1 + N2);
  G << X.G_, Y.G_;
  return ConstrainedZonotope::unchecked(G, X.c_ + Y.c_, block_diag_rows(X.Ae_, N1, Y.Ae_, N2),
                                        vcat(X.be_, Y.be_), false, X.tolerance());
}

ConstrainedZonotope minkowski_sum(const ConstrainedZonotope& X, const Polytope& Y) {
  require(X.dim() == Y.dim(), ErrorKind::DimensionMismatch, "Minkowski sum operands differ in dimension");
  if (Y.is_empty()) return ConstrainedZonotope::empty(X.dim(), X.tolerance());
  return minkowski_sum(X, ConstrainedZonotope::from_polytope(Y));
}

// ---------------------------------------------------------------------------
// Pontryagin difference

namespace {

ConstrainedZonotope difference_exact(ConstrainedZonotope X, const MatrixXd& gens) {
  for (int j = 0; j < gens.cols(); ++j) {
    const VectorXd g = gens.col(j);
    X = intersect(X.translate(-g), X.translate(g));
    if (X.is_empty()) return X;
  }
  return X;
}

ConstrainedZonotope difference_scaled(const ConstrainedZonotope& X, const MatrixXd& gens) {
  const int n = X.dim();
  const int N = X.latent_dim();
  const Tolerance& tol = X.tolerance();
  // Mean of the support points along +-e_i: inside X, away from the boundary for
  // full-dimensional X, and far cheaper than the min-norm latent LP.
  VectorXd k = VectorXd::Zero(n);
  for (int j = 0; j < n; ++j)
    k += X.support(VectorXd::Unit(n, j)).point + X.support(-VectorXd::Unit(n, j)).point;
  k /= 2.0 * n;

  // Vertices of a polytope containing the centered subtrahend.
  MatrixXd verts;
  if (gens.cols() <= kSubtrahendVertexGenerators) {
    const MatrixXd signs = sign_patterns(static_cast<int>(gens.cols()));
    verts = (gens * signs.transpose()).transpose();
  } else {
    const VectorXd h = gens.cwiseAbs().rowwise().sum();
    const MatrixXd signs = sign_patterns(n);
    verts = signs * h.asDiagonal();
  }
  verts = geometry::unique_rows(verts, 0.0);

  double rho = 0.0;
  for (int i = 0; i < verts.rows(); ++i) {
    const VectorXd v = verts.row(i).transpose();
    if (v.cwiseAbs().maxCoeff() == 0.0) continue;
    // Gauge of v with respect to X - k: maximize s with k + s v in X.
    solver::LpProblem lp = latent_lp(N, 1);
    lp.c(N) = -1.0;
    lp.lower(N) = 0.0;
    lp.A_eq = MatrixXd::Zero(n + X.num_equalities(), N + 1);
    lp.A_eq.topLeftCorner(n, N) = X.G();
    lp.A_eq.block(0, N, n, 1) = -v;
    if (X.num_equalities()) lp.A_eq.bottomLeftCorner(X.num_equalities(), N) = X.Ae();
    lp.b_eq = vcat(k - X.c(), X.be());
    const solver::LpResult r = solver::solve_lp(lp, tol);
    if (r.status == solver::SolveStatus::Unbounded) continue;
    if (r.status == solver::SolveStatus::IterationLimit)
      fail(ErrorKind::IterationLimit, "scaling LP hit the iteration cap");
    if (!r.optimal() || r.x(N) <= 1e-12) return ConstrainedZonotope::empty(n, tol);
    rho = std::max(rho, 1.0 / r.x(N));
    if (rho >= 1.0) return ConstrainedZonotope::empty(n, tol);
  }
  const double keep = 1.0 - rho;
  return ConstrainedZonotope(X.G() * keep, k + keep * (X.c() - k), X.Ae(), X.be(), tol);
}

}  // namespace

ConstrainedZonotope pontryagin_difference(const ConstrainedZonotope& X, const ConstrainedZonotope& S,
                                          DifferenceStrategy strategy, DifferenceStrategy* used) {
  require(X.dim() == S.dim(), ErrorKind::DimensionMismatch, "Pontryagin difference operands differ in dimension");
  if (!S.is_zonotope()) fail(ErrorKind::UnsupportedSubtrahend, "subtrahend must be a zonotope or an ellipsoid");
  if (S.is_empty()) fail(ErrorKind::EmptySet, "Pontryagin difference by an empty set is unbounded");

  std::vector<int> nonzero;
  for (int j = 0; j < S.latent_dim(); ++j)
    if (S.G().col(j).cwiseAbs().maxCoeff() > 0) nonzero.push_back(j);
  MatrixXd gens(S.dim(), nonzero.size());
  for (std::size_t k = 0; k < nonzero.size(); ++k) gens.col(k) = S.G().col(nonzero[k]);

  if (strategy == DifferenceStrategy::Auto) {
    const int g = static_cast<int>(gens.cols());
    const double predicted = std::ldexp(static_cast<double>(std::max(1, X.latent_dim())), g);
    strategy = (g <= kExactMaxGenerators && predicted <= kExactMaxLatent) ? DifferenceStrategy::ExactRecursive
                                                                          : DifferenceStrategy::ScaledInner;
  }
  if (used) *used = strategy;
  if (X.is_empty()) return X;

  const ConstrainedZonotope centered = X.translate(-S.c());
  if (gens.cols() == 0) return centered;
  if (strategy == DifferenceStrategy::ExactRecursive) return difference_exact(centered, gens);
  return difference_scaled(centered, gens);
}

ConstrainedZonotope pontryagin_difference(const ConstrainedZonotope& X, const Ellipsoid& S,
                                          DifferenceStrategy strategy, DifferenceStrategy* used) {
  return pontryagin_difference(X, ConstrainedZonotope::interval_hull(S), strategy, used);
}

// ---------------------------------------------------------------------------
// Containment

bool contains_set(const ConstrainedZonotope& X, const Polytope& Y) {
  require(X.dim() == Y.dim(), ErrorKind::DimensionMismatch, "containment operands differ in dimension");
  if (Y.is_empty()) return true;
  if (X.is_empty()) return false;
  const MatrixXd V = Y.vertices();
  for (int i = 0; i < V.rows(); ++i)
    if (!X.contains(V.row(i).transpose())) return false;
  return true;
}

bool contains_set(const ConstrainedZonotope& X, const ConstrainedZonotope& Y) {
  require(X.dim() == Y.dim(), ErrorKind::DimensionMismatch, "containment operands differ in dimension");
  if (Y.is_empty()) return true;
  if (X.is_empty()) return false;
  return contains_set(X, Y.to_polytope());
}

bool set_equal(const ConstrainedZonotope& X, const ConstrainedZonotope& Y) {
  if (X.dim() != Y.dim()) return false;
  if (X.is_empty() || Y.is_empty()) return X.is_empty() && Y.is_empty();
  return contains_set(X, Y) && contains_set(Y, X);
}

bool set_equal(const ConstrainedZonotope& X, const Polytope& Y) {
  if (X.dim() != Y.dim()) return false;
  if (X.is_empty() || Y.is_empty()) return X.is_empty() && Y.is_empty();
  return contains_set(X, Y) && contains_set(Y, X);
}

// ---------------------------------------------------------------------------
// Measures

double ConstrainedZonotope::volume_2d(int grid_n) const {
  if (dim() != 2) fail(ErrorKind::BadDimension, "grid volume is defined for planar sets");
  require(grid_n >= 1, ErrorKind::InvalidArgument, "grid size must be positive");
  if (empty_) return 0.0;
  const auto [lo, hi] = bounding_box();
  const VectorXd w = hi - lo;
  if (w.minCoeff() <= 0) return 0.0;
  // The halfspace form answers membership exactly and much faster than one LP per cell.
  std::optional<Polytope> P;
  if (remove_redundancy().latent_dim() <= 12) P = to_polytope();
  long inside = 0;
  for (int i = 0; i < grid_n; ++i)
    for (int j = 0; j < grid_n; ++j) {
      const VectorXd x = lo + VectorXd((VectorXd(2) << (i + 0.5) / grid_n, (j + 0.5) / grid_n).finished())
                                   .cwiseProduct(w);
      if (P ? P->contains(x) : contains(x)) ++inside;
    }
  return static_cast<double>(inside) / (static_cast<double>(grid_n) * grid_n) * w(0) * w(1);
}

CenteringResult ConstrainedZonotope::centering(CenteringKind kind) const {
  require(!empty_, ErrorKind::EmptySet, "centering of an empty constrained zonotope");
  if (kind == CenteringKind::CircumscribedRect) {
    CenteringResult out;
    out.kind = kind;
    auto [lo, hi] = bounding_box();
    out.lower = lo;
    out.upper = hi;
    out.center = 0.5 * (lo + hi);
    return out;
  }
  const DirectionSet& dirs = default_directions(dim());
  if (kind == CenteringKind::CircumscribedEllipsoid) return outer_polytope(*this, dirs).centering(kind);
  return inner_polytope(*this, dirs).centering(kind);
}

std::string ConstrainedZonotope::describe() const {
  std::ostringstream os;
  if (empty_) {
    os << "Empty Constrained Zonotope in R^" << dim();
    return os.str();
  }
  os << "Constrained Zonotope in R^" << dim();
  if (is_zonotope()) os << "\n\tthat is a zonotope with latent dimension " << latent_dim();
  else os << "\n\twith latent dimension " << latent_dim() << " and " << num_equalities() << " equality constraints";
  return os.str();
}

}  // namespace cvxset
