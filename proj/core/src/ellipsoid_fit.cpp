#include "cvxset/ellipsoid_fit.hpp"

#include "cvxset/error.hpp"
#include "cvxset/lp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <vector>

namespace cvxset::solver {

EnclosingEllipsoid mvee_of_points(const MatrixXd& points, double eps) {
  const int N = static_cast<int>(points.rows());
  const int n = static_cast<int>(points.cols());
  require(n >= 1, ErrorKind::DegenerateInput, "points must have at least one coordinate");
  require(N >= n + 1, ErrorKind::DegenerateInput, "need at least n+1 points");
  {
    const MatrixXd centered = points.rowwise() - points.colwise().mean();
    if (numerical_rank(centered, 1e-10) < n)
      fail(ErrorKind::DegenerateInput, "points lie in a lower-dimensional affine set");
  }

  // Lifted points q_j = (p_j, 1); weights u on the simplex.
  MatrixXd Qp(n + 1, N);
  Qp.topRows(n) = points.transpose();
  Qp.row(n).setOnes();
  VectorXd u = VectorXd::Constant(N, 1.0 / N);
  const double d = n + 1.0;

  // Wolfe-Atwood variant of Khachiyan's method: take the larger of the toward step and
  // the away step.
  const double target = d + n * eps;
  VectorXd M(N);
  for (int iter = 0; iter < 200'000; ++iter) {
    const MatrixXd X = Qp * u.asDiagonal() * Qp.transpose();
    Eigen::LLT<MatrixXd> llt(X);
    const MatrixXd Y = llt.solve(Qp);
    M = (Qp.cwiseProduct(Y)).colwise().sum().transpose();

    int jmax = 0;
    M.maxCoeff(&jmax);
    int jmin = -1;
    for (int j = 0; j < N; ++j)
      if (u(j) > 0 && (jmin < 0 || M(j) < M(jmin))) jmin = j;

    if (M(jmax) <= target) break;

    const double up = M(jmax) / d - 1.0;
    const double down = 1.0 - M(jmin) / d;
    if (up >= down || u(jmin) >= 1.0) {
      const double tau = (M(jmax) - d) / (d * (M(jmax) - 1.0));
      u *= (1.0 - tau);
      u(jmax) += tau;
    } else {
      double tau = (d - M(jmin)) / (d * (M(jmin) - 1.0));
      tau = std::min(tau, u(jmin) / (1.0 - u(jmin)));
      u *= (1.0 + tau);
      u(jmin) -= tau;
      if (u(jmin) < 0) u(jmin) = 0;
    }
  }

  const VectorXd c = points.transpose() * u;
  const MatrixXd S = points.transpose() * u.asDiagonal() * points - c * c.transpose();
  EnclosingEllipsoid out;
  out.center = c;
  out.shape = S.inverse() / n;
  out.shape = 0.5 * (out.shape + out.shape.transpose());
  return out;
}

ChebyshevBall chebyshev_ball(const MatrixXd& A, const VectorXd& b, const Tolerance& tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  require(b.size() == m, ErrorKind::DimensionMismatch, "b must have one entry per row of A");

  LpProblem lp;
  lp.c = VectorXd::Zero(n + 1);
  lp.c(n) = -1.0;
  lp.A_ub.resize(m, n + 1);
  lp.A_ub.leftCols(n) = A;
  for (int i = 0; i < m; ++i) lp.A_ub(i, n) = A.row(i).norm();
  lp.b_ub = b;
  lp.lower = VectorXd::Constant(n + 1, -std::numeric_limits<double>::infinity());
  lp.upper = VectorXd::Constant(n + 1, std::numeric_limits<double>::infinity());
  lp.lower(n) = 0.0;

  const LpResult r = solve_lp(lp, tol);
  ChebyshevBall ball;
  if (r.status == SolveStatus::Unbounded) fail(ErrorKind::Unbounded, "halfspaces admit arbitrarily large balls");
  if (r.status == SolveStatus::IterationLimit) fail(ErrorKind::IterationLimit, "Chebyshev LP hit the iteration cap");
  if (r.status == SolveStatus::Infeasible) return ball;
  ball.feasible = true;
  ball.center = r.x.head(n);
  ball.radius = r.x(n);
  return ball;
}

namespace {

// Coordinates of a symmetric matrix: diagonal entries then upper off-diagonal pairs.
struct SymBasis {
  int n;
  std::vector<std::pair<int, int>> idx;
  explicit SymBasis(int dim) : n(dim) {
    for (int k = 0; k < n; ++k)
      for (int l = k; l < n; ++l) idx.emplace_back(k, l);
  }
  int size() const { return static_cast<int>(idx.size()); }
  MatrixXd matrix(const VectorXd& z) const {
    MatrixXd B = MatrixXd::Zero(n, n);
    for (int t = 0; t < size(); ++t) {
      const auto [k, l] = idx[t];
      B(k, l) = z(t);
      B(l, k) = z(t);
    }
    return B;
  }
  // Columns E_t a for every basis element E_t.
  MatrixXd apply(const VectorXd& a) const {
    MatrixXd J = MatrixXd::Zero(n, size());
    for (int t = 0; t < size(); ++t) {
      const auto [k, l] = idx[t];
      J(k, t) += a(l);
      if (k != l) J(l, t) += a(k);
    }
    return J;
  }
};

struct BarrierState {
  double value = std::numeric_limits<double>::infinity();
  bool feasible = false;
};

}  // namespace

InscribedEllipsoid mvie_of_halfspaces(const MatrixXd& A, const VectorXd& b, const Tolerance& tol) {
  const int m = static_cast<int>(A.rows());
  const int n = static_cast<int>(A.cols());
  require(b.size() == m, ErrorKind::DimensionMismatch, "b must have one entry per row of A");

  const ChebyshevBall ball = chebyshev_ball(A, b, tol);
  if (!ball.feasible) fail(ErrorKind::EmptyInterior, "halfspaces are infeasible");
  const double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (ball.radius <= tol.feas * scale) fail(ErrorKind::EmptyInterior, "no ball of positive radius fits");
  for (int j = 0; j < n; ++j)
    for (double sgn : {1.0, -1.0}) {
      LpProblem lp;
      lp.c = VectorXd::Zero(n);
      lp.c(j) = -sgn;
      lp.A_ub = A;
      lp.b_ub = b;
      if (solve_lp(lp, tol).status == SolveStatus::Unbounded)
        fail(ErrorKind::Unbounded, "halfspaces do not bound a region");
    }

  // Drop zero rows; they carry no geometry once feasibility is known.
  std::vector<int> rows;
  for (int i = 0; i < m; ++i)
    if (A.row(i).norm() > 0) rows.push_back(i);
  const MatrixXd Ar = select_rows(A, rows);
  const VectorXd br = select_entries(b, rows);
  const int mr = static_cast<int>(rows.size());

  const SymBasis basis(n);
  const int p = basis.size();
  const int nv = p + n;
  std::vector<MatrixXd> J(mr);
  for (int i = 0; i < mr; ++i) J[i] = basis.apply(Ar.row(i).transpose());

  VectorXd z = VectorXd::Zero(nv);
  {
    const MatrixXd B0 = 0.5 * ball.radius * MatrixXd::Identity(n, n);
    for (int t = 0; t < p; ++t) z(t) = B0(basis.idx[t].first, basis.idx[t].second);
    z.tail(n) = ball.center;
  }

  auto evaluate = [&](const VectorXd& zz, double t) {
    BarrierState s;
    const MatrixXd B = basis.matrix(zz.head(p));
    Eigen::LLT<MatrixXd> llt(B);
    if (llt.info() != Eigen::Success) return s;
    const VectorXd d = zz.tail(n);
    double phi = -t * 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
    for (int i = 0; i < mr; ++i) {
      const double f = br(i) - Ar.row(i).dot(d) - (B * Ar.row(i).transpose()).norm();
      if (!(f > 0)) return s;
      phi -= std::log(f);
    }
    s.value = phi;
    s.feasible = true;
    return s;
  };

  double t = 1.0;
  const double gap = std::max(tol.opt, 1e-12);
  for (int outer = 0; outer < 80; ++outer) {
    for (int inner = 0; inner < 200; ++inner) {
      const MatrixXd B = basis.matrix(z.head(p));
      const VectorXd d = z.tail(n);
      const MatrixXd Binv = B.inverse();

      VectorXd grad = VectorXd::Zero(nv);
      MatrixXd hess = MatrixXd::Zero(nv, nv);
      // -t log det B
      std::vector<MatrixXd> E(p);
      for (int k = 0; k < p; ++k) E[k] = basis.matrix(VectorXd::Unit(p, k));
      std::vector<MatrixXd> BE(p);
      for (int k = 0; k < p; ++k) {
        BE[k] = Binv * E[k];
        grad(k) -= t * BE[k].trace();
      }
      for (int k = 0; k < p; ++k)
        for (int l = k; l < p; ++l) {
          const double v = t * (BE[k] * BE[l]).trace();
          hess(k, l) += v;
          if (k != l) hess(l, k) += v;
        }
      // -log f_i
      for (int i = 0; i < mr; ++i) {
        const VectorXd a = Ar.row(i).transpose();
        const VectorXd w = B * a;
        const double wn = w.norm();
        const double f = br(i) - a.dot(d) - wn;
        VectorXd gf(nv);
        MatrixXd Hf = MatrixXd::Zero(nv, nv);
        if (wn > 0) {
          const VectorXd uhat = w / wn;
          gf.head(p) = -J[i].transpose() * uhat;
          const MatrixXd P = MatrixXd::Identity(n, n) - uhat * uhat.transpose();
          Hf.topLeftCorner(p, p) = -J[i].transpose() * P * J[i] / wn;
        } else {
          gf.head(p).setZero();
        }
        gf.tail(n) = -a;
        grad -= gf / f;
        hess += gf * gf.transpose() / (f * f) - Hf / f;
      }

      Eigen::LDLT<MatrixXd> ldlt(hess);
      VectorXd step = -ldlt.solve(grad);
      if (!step.allFinite()) step = -grad;
      const double decrement = -grad.dot(step);
      if (decrement / 2.0 <= 1e-12) break;

      const BarrierState here = evaluate(z, t);
      double alpha = 1.0;
      bool moved = false;
      for (int ls = 0; ls < 60; ++ls) {
        const VectorXd trial = z + alpha * step;
        const BarrierState s = evaluate(trial, t);
        if (s.feasible && s.value <= here.value - 0.25 * alpha * decrement) {
          z = trial;
          moved = true;
          break;
        }
        alpha *= 0.5;
      }
      if (!moved) break;
    }
    if (mr / t < gap) break;
    t *= 10.0;
  }

  InscribedEllipsoid out;
  out.B = basis.matrix(z.head(p));
  out.center = z.tail(n);
  return out;
}

}  // namespace cvxset::solver
