#include "cvxset/hull.hpp"

#include "cvxset/ellipsoid_fit.hpp"
#include "cvxset/error.hpp"
#include "cvxset/lp.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

namespace cvxset::geometry {

namespace {

constexpr double kAffineRankRel = 1e-9;
constexpr double kPlaneRel = 1e-9;

struct Facet {
  std::vector<int> v;  // sorted point indices
  VectorXd normal;
  double offset = 0.0;
  bool alive = true;
};

// Unit normal of the hyperplane through the given points (r points in R^r).
VectorXd plane_normal(const MatrixXd& Y, const std::vector<int>& idx) {
  const int r = static_cast<int>(Y.cols());
  MatrixXd D(static_cast<int>(idx.size()) - 1, r);
  for (std::size_t k = 1; k < idx.size(); ++k) D.row(k - 1) = Y.row(idx[k]) - Y.row(idx[0]);
  Eigen::JacobiSVD<MatrixXd> svd(D, Eigen::ComputeFullV);
  return svd.matrixV().col(r - 1);
}

Facet make_facet(const MatrixXd& Y, std::vector<int> idx, const VectorXd& inside) {
  std::sort(idx.begin(), idx.end());
  Facet f;
  f.v = idx;
  f.normal = plane_normal(Y, idx);
  f.offset = f.normal.dot(Y.row(idx[0]).transpose());
  if (f.normal.dot(inside) > f.offset) {
    f.normal = -f.normal;
    f.offset = -f.offset;
  }
  return f;
}

struct LocalHull {
  MatrixXd normals;  // rows, unit
  VectorXd offsets;
  std::vector<int> vertices;  // indices into Y
};

// Full-dimensional hull of the rows of Y in R^r, r >= 2.
LocalHull full_hull(const MatrixXd& Y, double eps) {
  const int P = static_cast<int>(Y.rows());
  const int r = static_cast<int>(Y.cols());

  // Initial simplex: greedy farthest points from the current affine span.
  std::vector<int> simplex;
  {
    int first = 0;
    double best = -1.0;
    const VectorXd mean = Y.colwise().mean().transpose();
    for (int i = 0; i < P; ++i) {
      const double d = (Y.row(i).transpose() - mean).norm();
      if (d > best) {
        best = d;
        first = i;
      }
    }
    simplex.push_back(first);
    MatrixXd basis(r, 0);
    while (static_cast<int>(simplex.size()) < r + 1) {
      int pick = -1;
      double far = -1.0;
      for (int i = 0; i < P; ++i) {
        VectorXd w = (Y.row(i) - Y.row(first)).transpose();
        if (basis.cols()) w -= basis * (basis.transpose() * w);
        const double d = w.norm();
        if (d > far) {
          far = d;
          pick = i;
        }
      }
      VectorXd w = (Y.row(pick) - Y.row(first)).transpose();
      if (basis.cols()) w -= basis * (basis.transpose() * w);
      if (w.norm() <= 0) fail(ErrorKind::DegenerateInput, "hull input lost full dimension");
      basis.conservativeResize(r, basis.cols() + 1);
      basis.col(basis.cols() - 1) = w / w.norm();
      simplex.push_back(pick);
    }
  }
  VectorXd inside = VectorXd::Zero(r);
  for (int i : simplex) inside += Y.row(i).transpose();
  inside /= (r + 1);

  std::vector<Facet> facets;
  for (int skip = 0; skip <= r; ++skip) {
    std::vector<int> idx;
    for (int k = 0; k <= r; ++k)
      if (k != skip) idx.push_back(simplex[k]);
    facets.push_back(make_facet(Y, idx, inside));
  }

  std::vector<char> done(P, 0);
  for (int i : simplex) done[i] = 1;

  while (true) {
    int best_point = -1;
    double best_dist = eps;
    for (const Facet& f : facets) {
      if (!f.alive) continue;
      for (int i = 0; i < P; ++i) {
        if (done[i]) continue;
        const double d = f.normal.dot(Y.row(i).transpose()) - f.offset;
        if (d > best_dist) {
          best_dist = d;
          best_point = i;
        }
      }
    }
    if (best_point < 0) break;
    done[best_point] = 1;
    const VectorXd p = Y.row(best_point).transpose();

    std::map<std::vector<int>, int> ridge_count;
    std::vector<int> visible;
    for (int fi = 0; fi < static_cast<int>(facets.size()); ++fi) {
      Facet& f = facets[fi];
      if (!f.alive) continue;
      if (f.normal.dot(p) - f.offset > eps) {
        visible.push_back(fi);
        for (int drop = 0; drop < r; ++drop) {
          std::vector<int> ridge;
          for (int k = 0; k < r; ++k)
            if (k != drop) ridge.push_back(f.v[k]);
          ++ridge_count[ridge];
        }
      }
    }
    for (int fi : visible) facets[fi].alive = false;
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;
      std::vector<int> idx = ridge;
      idx.push_back(best_point);
      facets.push_back(make_facet(Y, idx, inside));
    }
  }

  // Group simplicial facets lying in a common hyperplane.
  std::vector<int> alive;
  for (int fi = 0; fi < static_cast<int>(facets.size()); ++fi)
    if (facets[fi].alive) alive.push_back(fi);
  const int F = static_cast<int>(alive.size());
  std::vector<int> group(F, -1);
  int ngroups = 0;
  for (int a = 0; a < F; ++a) {
    if (group[a] >= 0) continue;
    group[a] = ngroups;
    const Facet& fa = facets[alive[a]];
    for (int b2 = a + 1; b2 < F; ++b2) {
      if (group[b2] >= 0) continue;
      const Facet& fb = facets[alive[b2]];
      if (fa.normal.dot(fb.normal) <= 0) continue;
      bool same = true;
      for (int i : fb.v)
        if (std::abs(fa.normal.dot(Y.row(i).transpose()) - fa.offset) > eps) {
          same = false;
          break;
        }
      if (same) group[b2] = ngroups;
    }
    ++ngroups;
  }

  LocalHull out;
  out.normals.resize(ngroups, r);
  out.offsets.resize(ngroups);
  for (int g = 0; g < ngroups; ++g) {
    // Refit the plane through every point tight on the grouped facets.
    std::vector<int> members;
    VectorXd ref = VectorXd::Zero(r);
    for (int a = 0; a < F; ++a)
      if (group[a] == g) {
        members.push_back(a);
        ref += facets[alive[a]].normal;
      }
    ref.normalize();
    std::vector<int> on;
    const Facet& f0 = facets[alive[members[0]]];
    for (int i = 0; i < P; ++i)
      if (std::abs(f0.normal.dot(Y.row(i).transpose()) - f0.offset) <= eps) on.push_back(i);
    VectorXd n = ref;
    if (static_cast<int>(on.size()) >= r) {
      MatrixXd T(on.size(), r);
      for (std::size_t k = 0; k < on.size(); ++k) T.row(k) = Y.row(on[k]);
      const VectorXd mean = T.colwise().mean().transpose();
      T.rowwise() -= mean.transpose();
      Eigen::JacobiSVD<MatrixXd> svd(T, Eigen::ComputeFullV);
      n = svd.matrixV().col(r - 1);
      if (n.dot(ref) < 0) n = -n;
    }
    double off = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < P; ++i) off = std::max(off, n.dot(Y.row(i).transpose()));
    out.normals.row(g) = n.transpose();
    out.offsets(g) = off;
  }

  for (int i = 0; i < P; ++i) {
    std::vector<int> tight;
    for (int g = 0; g < ngroups; ++g)
      if (out.offsets(g) - out.normals.row(g).dot(Y.row(i)) <= eps) tight.push_back(g);
    if (static_cast<int>(tight.size()) < r) continue;
    if (numerical_rank(select_rows(out.normals, tight), 1e-9) == r) out.vertices.push_back(i);
  }
  return out;
}

}  // namespace

MatrixXd unique_rows(const MatrixXd& points, double eps) {
  std::vector<int> keep;
  for (int i = 0; i < points.rows(); ++i) {
    bool dup = false;
    for (int j : keep)
      if ((points.row(i) - points.row(j)).cwiseAbs().maxCoeff() <= eps) {
        dup = true;
        break;
      }
    if (!dup) keep.push_back(i);
  }
  return select_rows(points, keep);
}

HullResult convex_hull(const MatrixXd& points_in, const Tolerance& tol) {
  (void)tol;
  require(points_in.rows() > 0, ErrorKind::EmptySet, "convex hull of no points");
  const int n = static_cast<int>(points_in.cols());
  const double scale = std::max(1.0, points_in.cwiseAbs().maxCoeff());
  const MatrixXd X = unique_rows(points_in, 1e-12 * scale);
  const int P = static_cast<int>(X.rows());

  const VectorXd x0 = X.colwise().mean().transpose();
  const MatrixXd C = X.rowwise() - x0.transpose();
  Eigen::JacobiSVD<MatrixXd> svd(C, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  int r = 0;
  const double s0 = s.size() ? s(0) : 0.0;
  const double floor = std::max(kAffineRankRel * s0, 1e-13 * scale);
  for (int k = 0; k < s.size(); ++k)
    if (s(k) > floor) ++r;
  const MatrixXd& V = svd.matrixV();
  const MatrixXd U = V.leftCols(r);
  const MatrixXd Nc = V.rightCols(n - r);

  HullResult out;
  out.affine_dim = r;
  out.Ae = Nc.transpose();
  out.be = out.Ae * x0;

  if (r == 0) {
    out.A.resize(0, n);
    out.b.resize(0);
    out.vertices = X.topRows(1);
    return out;
  }

  const MatrixXd Y = C * U;
  const double yscale = std::max(Y.cwiseAbs().maxCoeff(), 1e-300);
  const double eps = kPlaneRel * std::max(yscale, 1e-3 * scale);

  if (r == 1) {
    int imin = 0;
    int imax = 0;
    for (int i = 0; i < P; ++i) {
      if (Y(i, 0) < Y(imin, 0)) imin = i;
      if (Y(i, 0) > Y(imax, 0)) imax = i;
    }
    const VectorXd u = U.col(0);
    out.A.resize(2, n);
    out.b.resize(2);
    out.A.row(0) = -u.transpose();
    out.b(0) = -(Y(imin, 0) + u.dot(x0));
    out.A.row(1) = u.transpose();
    out.b(1) = Y(imax, 0) + u.dot(x0);
    out.vertices.resize(2, n);
    out.vertices.row(0) = X.row(imin);
    out.vertices.row(1) = X.row(imax);
    return out;
  }

  const LocalHull lh = full_hull(Y, eps);
  out.A = lh.normals * U.transpose();
  out.A = out.A.unaryExpr([](double a) { return std::abs(a) < 1e-15 ? 0.0 : a; });
  out.b = lh.offsets + out.A * x0;
  std::vector<int> vidx = lh.vertices;
  out.vertices = select_rows(X, vidx);
  return out;
}

namespace {

struct Subspace {
  bool empty = false;
  VectorXd xp;
  MatrixXd Z;
};

Subspace eliminate_equalities(const MatrixXd& Ae, const VectorXd& be, int n, double feas) {
  Subspace s;
  if (Ae.rows() == 0) {
    s.xp = VectorXd::Zero(n);
    s.Z = MatrixXd::Identity(n, n);
    return s;
  }
  const std::vector<int> rows = independent_rows(Ae, 1e-10);
  const MatrixXd E = select_rows(Ae, rows);
  s.xp = E.completeOrthogonalDecomposition().solve(select_entries(be, rows));
  const double scale = std::max(1.0, be.cwiseAbs().maxCoeff());
  if ((Ae * s.xp - be).cwiseAbs().maxCoeff() > feas * scale * 10) {
    s.empty = true;
    return s;
  }
  s.Z = null_space(E, 1e-10);
  return s;
}

MatrixXd polish(const MatrixXd& verts, const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae,
                const VectorXd& be) {
  MatrixXd out = verts;
  const int n = static_cast<int>(verts.cols());
  for (int k = 0; k < verts.rows(); ++k) {
    const VectorXd x = verts.row(k).transpose();
    std::vector<int> tight;
    for (int i = 0; i < A.rows(); ++i) {
      const double nrm = A.row(i).norm();
      if (nrm == 0) continue;
      if (std::abs(b(i) - A.row(i).dot(x)) <= 1e-9 * (1.0 + std::abs(b(i)))) tight.push_back(i);
    }
    MatrixXd M = vstack(select_rows(A, tight), Ae);
    VectorXd rhs = vcat(select_entries(b, tight), be);
    if (M.rows() < n || numerical_rank(M, 1e-10) < n) continue;
    const VectorXd refined = M.colPivHouseholderQr().solve(rhs);
    if ((refined - x).norm() <= 1e-7 * (1.0 + x.norm())) out.row(k) = refined.transpose();
  }
  return out;
}

MatrixXd enumerate_impl(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae, const VectorXd& be, int n,
                        const Tolerance& tol, int depth) {
  require(depth <= n + 1, ErrorKind::DegenerateInput, "implicit-equality detection did not converge");
  const Subspace sub = eliminate_equalities(Ae, be, n, tol.feas);
  if (sub.empty) return MatrixXd(0, n);
  const int k = static_cast<int>(sub.Z.cols());
  const double bscale = std::max(1.0, b.size() ? b.cwiseAbs().maxCoeff() : 0.0);

  if (k == 0) {
    if (A.rows() && ((A * sub.xp - b).array() > tol.feas * bscale * 10).any()) return MatrixXd(0, n);
    return sub.xp.transpose();
  }

  const MatrixXd Ak = A.rows() ? MatrixXd(A * sub.Z) : MatrixXd(0, k);
  const VectorXd bk = A.rows() ? VectorXd(b - A * sub.xp) : VectorXd(0);
  if (Ak.rows() == 0) fail(ErrorKind::UnboundedPolytope, "polyhedron is unbounded");

  solver::ChebyshevBall ball;
  try {
    ball = solver::chebyshev_ball(Ak, bk, tol);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Unbounded) fail(ErrorKind::UnboundedPolytope, "polyhedron is unbounded");
    throw;
  }
  if (!ball.feasible) return MatrixXd(0, n);

  const double thin = 1e-9 * bscale;
  if (ball.radius <= thin) {
    // No interior in the current subspace: some rows hold with equality everywhere.
    std::vector<int> implicit;
    std::vector<int> rest;
    for (int i = 0; i < Ak.rows(); ++i) {
      const double nrm = Ak.row(i).norm();
      if (nrm <= 1e-14) continue;
      solver::LpProblem lp;
      lp.c = Ak.row(i).transpose();
      lp.A_ub = Ak;
      lp.b_ub = bk;
      const solver::LpResult r = solver::solve_lp(lp, tol);
      if (r.status == solver::SolveStatus::Infeasible) return MatrixXd(0, n);
      if (r.optimal() && r.objective >= bk(i) - 1e-8 * std::max(1.0, std::abs(bk(i)))) implicit.push_back(i);
      else rest.push_back(i);
    }
    if (implicit.empty()) fail(ErrorKind::DegenerateInput, "set is too thin to classify");
    const MatrixXd Ae2 = vstack(Ae, select_rows(A, implicit));
    const VectorXd be2 = vcat(be, select_entries(b, implicit));
    return enumerate_impl(select_rows(A, rest), select_entries(b, rest), Ae2, be2, n, tol, depth + 1);
  }

  // Polar construction about the Chebyshev center.
  std::vector<int> rows;
  for (int i = 0; i < Ak.rows(); ++i)
    if (Ak.row(i).norm() > 1e-14) rows.push_back(i);
  MatrixXd polar(rows.size(), k);
  for (std::size_t t = 0; t < rows.size(); ++t) {
    const int i = rows[t];
    const double slack = bk(i) - Ak.row(i).dot(ball.center);
    polar.row(t) = Ak.row(i) / slack;
  }
  MatrixXd Y;
  if (k == 1) {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int t = 0; t < polar.rows(); ++t) {
      if (polar(t, 0) > 0) hi = std::min(hi, 1.0 / polar(t, 0));
      if (polar(t, 0) < 0) lo = std::max(lo, 1.0 / polar(t, 0));
    }
    if (!std::isfinite(lo) || !std::isfinite(hi)) fail(ErrorKind::UnboundedPolytope, "polyhedron is unbounded");
    Y.resize(2, 1);
    Y << ball.center(0) + lo, ball.center(0) + hi;
  } else {
    const HullResult ph = convex_hull(polar, tol);
    if (ph.affine_dim < k) fail(ErrorKind::UnboundedPolytope, "polyhedron is unbounded");
    const double pscale = std::max(1.0, polar.cwiseAbs().maxCoeff());
    Y.resize(ph.A.rows(), k);
    for (int f = 0; f < ph.A.rows(); ++f) {
      if (ph.b(f) <= 1e-11 * pscale) fail(ErrorKind::UnboundedPolytope, "polyhedron is unbounded");
      Y.row(f) = ball.center.transpose() + ph.A.row(f) / ph.b(f);
    }
  }
  MatrixXd X = (sub.Z * Y.transpose()).transpose();
  X.rowwise() += sub.xp.transpose();
  return X;
}

}  // namespace

MatrixXd enumerate_vertices(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae, const VectorXd& be,
                            const Tolerance& tol) {
  const int n = static_cast<int>(A.rows() ? A.cols() : Ae.cols());
  require(b.size() == A.rows() && be.size() == Ae.rows(), ErrorKind::DimensionMismatch, "rhs sizes");
  require(A.rows() == 0 || Ae.rows() == 0 || A.cols() == Ae.cols(), ErrorKind::DimensionMismatch,
          "inequality and equality blocks disagree on dimension");
  MatrixXd V = enumerate_impl(A, b, Ae, be, n, tol, 0);
  if (V.rows() == 0) return V;
  V = polish(V, A, b, Ae, be);
  const double scale = std::max(1.0, V.cwiseAbs().maxCoeff());
  return unique_rows(V, 1e-9 * scale);
}

}  // namespace cvxset::geometry
