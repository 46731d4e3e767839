#include "cvxset/ellipsoid.hpp"

#include "cvxset/error.hpp"
#include "cvxset/psd.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cvxset {

namespace {

constexpr double kLambdaMax = 1e6;

}  // namespace

double unit_ball_volume(int n) { return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0); }

Ellipsoid Ellipsoid::from_shape(const MatrixXd& Q, const VectorXd& c, const Tolerance& tol) {
  tol.validate();
  require(Q.rows() == Q.cols() && Q.rows() == c.size(), ErrorKind::DimensionMismatch,
          "Q must be square and match the center");
  require(Q.allFinite() && c.allFinite(), ErrorKind::InvalidArgument, "ellipsoid data must be finite");
  const double scale = std::max(1.0, Q.cwiseAbs().maxCoeff());
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-9 * scale)
    fail(ErrorKind::NotPositiveDefinite, "Q must be symmetric");
  const MatrixXd Qs = 0.5 * (Q + Q.transpose());
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Qs);
  const VectorXd& lam = es.eigenvalues();
  if (lam.size() == 0 || lam(0) <= tol.rank * std::max(lam(lam.size() - 1), 0.0) || lam(0) <= 0)
    fail(ErrorKind::NotPositiveDefinite, "Q must be positive definite");
  Ellipsoid e;
  e.Q_ = Qs;
  e.c_ = c;
  e.tol_ = tol;
  e.G_ = es.eigenvectors() * lam.cwiseInverse().cwiseSqrt().asDiagonal() * es.eigenvectors().transpose();
  return e;
}

Ellipsoid Ellipsoid::from_generator(const MatrixXd& G, const VectorXd& c, const Tolerance& tol) {
  tol.validate();
  require(G.rows() == G.cols() && G.rows() == c.size(), ErrorKind::DimensionMismatch,
          "G must be square and match the center");
  require(G.allFinite() && c.allFinite(), ErrorKind::InvalidArgument, "ellipsoid data must be finite");
  if (G.rows() == 0 || numerical_rank(G, tol.rank) < G.rows())
    fail(ErrorKind::SingularMatrix, "generator must be nonsingular");
  Ellipsoid e;
  e.G_ = G;
  e.c_ = c;
  e.tol_ = tol;
  const MatrixXd Ginv = G.inverse();
  e.Q_ = Ginv.transpose() * Ginv;
  e.Q_ = 0.5 * (e.Q_ + e.Q_.transpose());
  return e;
}

Ellipsoid Ellipsoid::ball(const VectorXd& c, double r, const Tolerance& tol) {
  require(r > 0 && std::isfinite(r), ErrorKind::InvalidArgument, "ball radius must be positive");
  const int n = static_cast<int>(c.size());
  Ellipsoid e;
  e.G_ = r * MatrixXd::Identity(n, n);
  e.Q_ = MatrixXd::Identity(n, n) / (r * r);
  e.c_ = c;
  e.tol_ = tol;
  return e;
}

Ellipsoid Ellipsoid::from_parts(const MatrixXd& Q, const MatrixXd& G, const VectorXd& c, const Tolerance& tol) {
  tol.validate();
  const int n = static_cast<int>(c.size());
  require(Q.rows() == n && Q.cols() == n && G.rows() == n && G.cols() == n, ErrorKind::DimensionMismatch,
          "Q and G must be square and match the center");
  Ellipsoid e;
  e.Q_ = Q;
  e.G_ = G;
  e.c_ = c;
  e.tol_ = tol;
  return e;
}

Ellipsoid Ellipsoid::with_tolerance(const Tolerance& tol) const {
  tol.validate();
  Ellipsoid e = *this;
  e.tol_ = tol;
  return e;
}

SupportResult Ellipsoid::support(const VectorXd& v) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "direction has the wrong dimension");
  SupportResult out;
  const VectorXd w = G_.transpose() * v;
  const double wn = w.norm();
  out.value = c_.dot(v) + wn;
  out.point = wn > 0 ? VectorXd(c_ + G_ * w / wn) : c_;
  return out;
}

VectorXd Ellipsoid::support_vector(const VectorXd& v) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "direction has the wrong dimension");
  const VectorXd w = G_.transpose() * v;
  if (w.norm() == 0) fail(ErrorKind::ZeroDirection, "support vector needs a nonzero direction");
  return c_ + G_ * w / w.norm();
}

bool Ellipsoid::contains(const VectorXd& x) const {
  require(x.size() == dim(), ErrorKind::DimensionMismatch, "point has the wrong dimension");
  const VectorXd d = x - c_;
  return d.dot(Q_ * d) <= 1.0 + tol_.feas;
}

ProjectionResult Ellipsoid::project(const VectorXd& v) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "point has the wrong dimension");
  ProjectionResult out;
  const VectorXd d = v - c_;
  if (d.dot(Q_ * d) <= 1.0) {
    out.point = v;
    out.distance = 0.0;
    return out;
  }
  // Minimize ||x - y||^2 s.t. sum q_i x_i^2 <= 1 in the eigenbasis; x_i = y_i / (1 + lambda q_i).
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(Q_);
  const VectorXd& q = es.eigenvalues();
  const VectorXd y = es.eigenvectors().transpose() * d;
  auto g = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < q.size(); ++i) {
      const double t = y(i) / (1.0 + lam * q(i));
      s += q(i) * t * t;
    }
    return s - 1.0;
  };
  auto dg = [&](double lam) {
    double s = 0.0;
    for (int i = 0; i < q.size(); ++i) {
      const double den = 1.0 + lam * q(i);
      s += -2.0 * q(i) * q(i) * y(i) * y(i) / (den * den * den);
    }
    return s;
  };
  double lo = 0.0;
  double hi = 1.0;
  while (g(hi) > 0) hi *= 2.0;
  double lam = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double val = g(lam);
    if (val > 0) lo = lam;
    else hi = lam;
    if (std::abs(val) <= 1e-14 || hi - lo <= 1e-12 * std::max(1.0, hi)) break;
    double next = lam - val / dg(lam);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    lam = next;
  }
  VectorXd x(q.size());
  for (int i = 0; i < q.size(); ++i) x(i) = y(i) / (1.0 + lam * q(i));
  out.point = c_ + es.eigenvectors() * x;
  out.distance = (out.point - v).norm();
  return out;
}

Ellipsoid Ellipsoid::affine_map(const MatrixXd& M, const VectorXd& v) const {
  require(M.cols() == dim(), ErrorKind::DimensionMismatch, "map columns must equal the set dimension");
  require(v.size() == 0 || v.size() == M.rows(), ErrorKind::DimensionMismatch, "offset has the wrong dimension");
  if (M.rows() == 0 || numerical_rank(M, tol_.rank) < M.rows())
    fail(ErrorKind::RankDeficient, "ellipsoid image needs a full row-rank map");
  const MatrixXd MG = M * G_;
  const MatrixXd Gm = psd_sqrt(MG * MG.transpose());
  VectorXd c = M * c_;
  if (v.size()) c += v;
  return from_generator(Gm, c, tol_);
}

Ellipsoid Ellipsoid::translate(const VectorXd& v) const {
  require(v.size() == dim(), ErrorKind::DimensionMismatch, "translation has the wrong dimension");
  Ellipsoid e = *this;
  e.c_ += v;
  return e;
}

Ellipsoid Ellipsoid::inverse_affine_map(const MatrixXd& M) const {
  require(M.rows() == dim() && M.cols() == dim(), ErrorKind::DimensionMismatch, "map must be square");
  Eigen::FullPivLU<MatrixXd> lu(M);
  lu.setThreshold(tol_.rank);
  if (!lu.isInvertible()) fail(ErrorKind::SingularMatrix, "inverse affine map needs an invertible matrix");
  return from_generator(lu.solve(G_), lu.solve(c_), tol_);
}

Ellipsoid Ellipsoid::project_away(const std::vector<int>& dims) const {
  std::vector<int> keep;
  for (int j = 0; j < dim(); ++j) {
    if (std::find(dims.begin(), dims.end(), j) == dims.end()) keep.push_back(j);
  }
  for (int d : dims)
    if (d < 0 || d >= dim()) fail(ErrorKind::BadDims, "dimension index out of range");
  if (keep.empty()) fail(ErrorKind::BadDims, "cannot drop every dimension");
  MatrixXd M = MatrixXd::Zero(keep.size(), dim());
  for (std::size_t k = 0; k < keep.size(); ++k) M(k, keep[k]) = 1.0;
  return affine_map(M);
}

double Ellipsoid::volume() const { return unit_ball_volume(dim()) * std::abs(G_.determinant()); }

VectorXd Ellipsoid::interval_half_widths() const { return G_.rowwise().norm(); }

std::pair<VectorXd, VectorXd> Ellipsoid::bounding_box() const {
  const VectorXd h = interval_half_widths();
  return {c_ - h, c_ + h};
}

CenteringResult Ellipsoid::centering(CenteringKind kind) const {
  CenteringResult out;
  out.kind = kind;
  out.center = c_;
  switch (kind) {
    case CenteringKind::Chebyshev: {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(Q_, Eigen::EigenvaluesOnly);
      out.radius = 1.0 / std::sqrt(es.eigenvalues()(dim() - 1));
      break;
    }
    case CenteringKind::InscribedEllipsoid:
    case CenteringKind::CircumscribedEllipsoid:
      out.shape = Q_;
      break;
    case CenteringKind::CircumscribedRect: {
      auto [lo, hi] = bounding_box();
      out.lower = lo;
      out.upper = hi;
      break;
    }
  }
  return out;
}

std::string Ellipsoid::describe() const {
  std::ostringstream os;
  os << "Ellipsoid in R^" << dim();
  return os.str();
}

bool contains_set(const Ellipsoid& E, const Ellipsoid& Y) {
  require(E.dim() == Y.dim(), ErrorKind::DimensionMismatch, "containment operands differ in dimension");
  const int n = E.dim();
  // In Y's unit-ball coordinates x = d + G_Y u, Y subset of E iff some lambda >= 0 makes
  //   lambda [I 0; 0 -1] - [G'QG  G'Q(d-c); .  (d-c)'Q(d-c) - 1]
  // positive semidefinite.
  const MatrixXd& G = Y.G();
  const VectorXd off = Y.c() - E.c();
  MatrixXd ME(n + 1, n + 1);
  ME.topLeftCorner(n, n) = G.transpose() * E.Q() * G;
  ME.topRightCorner(n, 1) = G.transpose() * E.Q() * off;
  ME.bottomLeftCorner(1, n) = ME.topRightCorner(n, 1).transpose();
  ME(n, n) = off.dot(E.Q() * off) - 1.0;
  MatrixXd MY = MatrixXd::Identity(n + 1, n + 1);
  MY(n, n) = -1.0;
  return solver::psd_linesearch(-ME, MY, 0.0, kLambdaMax, E.tolerance()).has_value();
}

bool contains_set(const Ellipsoid& E, const Polytope& Y) {
  require(E.dim() == Y.dim(), ErrorKind::DimensionMismatch, "containment operands differ in dimension");
  if (Y.is_empty()) return true;
  const MatrixXd V = Y.vertices();
  for (int i = 0; i < V.rows(); ++i)
    if (!E.contains(V.row(i).transpose())) return false;
  return true;
}

bool set_equal(const Ellipsoid& E, const Ellipsoid& F) {
  if (E.dim() != F.dim()) return false;
  return contains_set(E, F) && contains_set(F, E);
}

}  // namespace cvxset
