#include "cvxset/approximation.hpp"

#include "cvxset/error.hpp"
#include "cvxset/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

namespace cvxset {

namespace {

constexpr double kMinNorm = 0.8;
constexpr double kImprovementTol = 1e-6;

// Strictly positive compositions of `level` into n parts, lexicographic order.
void compositions(int n, int level, std::vector<int>& cur, std::vector<std::vector<int>>& out, std::size_t cap) {
  if (out.size() >= cap) return;
  if (static_cast<int>(cur.size()) == n - 1) {
    const int last = level - std::accumulate(cur.begin(), cur.end(), 0);
    if (last >= 1) {
      cur.push_back(last);
      out.push_back(cur);
      cur.pop_back();
    }
    return;
  }
  const int used = std::accumulate(cur.begin(), cur.end(), 0);
  for (int k = 1; used + k + (n - 1 - static_cast<int>(cur.size())) <= level; ++k) {
    cur.push_back(k);
    compositions(n, level, cur, out, cap);
    cur.pop_back();
  }
}

double binom(int a, int b) {
  if (b < 0 || b > a) return 0;
  double r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

// Initial layout: a uniform lattice on the interior of the orthant simplex patch.
MatrixXd initial_layout(int n, int D) {
  int level = n;
  while (binom(level - 1, n - 1) < D) ++level;
  std::vector<std::vector<int>> pts;
  std::vector<int> cur;
  compositions(n, level, cur, pts, static_cast<std::size_t>(D));
  MatrixXd X(D, n);
  for (int i = 0; i < D; ++i) {
    for (int j = 0; j < n; ++j) X(i, j) = pts[i][j];
    X.row(i).normalize();
  }
  return X;
}

// Separation objective of a layout: the smallest of the pairwise distances, the
// distances to each e_j and twice each coordinate.
double separation(const MatrixXd& X) {
  const int D = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  double r = std::numeric_limits<double>::infinity();
  for (int i = 0; i < D; ++i) {
    r = std::min(r, 2.0 * X.row(i).minCoeff());
    for (int j = 0; j < n; ++j) r = std::min(r, (X.row(i).transpose() - VectorXd::Unit(n, j)).norm());
    for (int k = i + 1; k < D; ++k) r = std::min(r, (X.row(i) - X.row(k)).norm());
  }
  return r;
}

// One linearized subproblem about `X` with step bound `delta`; returns the raw iterate.
MatrixXd ccp_step(const MatrixXd& X, double delta) {
  const int D = static_cast<int>(X.rows());
  const int n = static_cast<int>(X.cols());
  const int nv = D * n + 1;
  const int r = D * n;
  const int rows = D * (D - 1) / 2 + D * n + D * n + 2 * D;
  solver::LpProblem lp;
  lp.c = VectorXd::Zero(nv);
  lp.c(r) = -1.0;
  lp.lower.resize(nv);
  lp.upper.resize(nv);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < n; ++j) {
      lp.lower(i * n + j) = std::max(0.0, X(i, j) - delta);
      lp.upper(i * n + j) = std::min(1.0, X(i, j) + delta);
    }
  lp.lower(r) = 0.0;
  lp.upper(r) = 2.0;
  lp.A_ub = MatrixXd::Zero(rows, nv);
  lp.b_ub = VectorXd::Zero(rows);
  int row = 0;
  // u'(x_i - x_k) >= r with u the unit direction of the current difference.
  for (int i = 0; i < D; ++i)
    for (int k = i + 1; k < D; ++k, ++row) {
      VectorXd u = X.row(i) - X.row(k);
      const double un = u.norm();
      u = un > 0 ? VectorXd(u / un) : VectorXd::Unit(n, 0);
      lp.A_ub.block(row, i * n, 1, n) = -u.transpose();
      lp.A_ub.block(row, k * n, 1, n) = u.transpose();
      lp.A_ub(row, r) = 1.0;
    }
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < n; ++j, ++row) {
      VectorXd u = X.row(i).transpose() - VectorXd::Unit(n, j);
      const double un = u.norm();
      u = un > 0 ? VectorXd(u / un) : VectorXd::Unit(n, (j + 1) % n);
      lp.A_ub.block(row, i * n, 1, n) = -u.transpose();
      lp.A_ub(row, r) = 1.0;
      lp.b_ub(row) = -u(j);
    }
  // 2 x_ij >= r
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < n; ++j, ++row) {
      lp.A_ub(row, i * n + j) = -2.0;
      lp.A_ub(row, r) = 1.0;
    }
  // 0.8 <= ||x_i|| (linearized) and the tangent plane of ||x_i|| <= 1.
  for (int i = 0; i < D; ++i) {
    const VectorXd u = X.row(i).transpose() / X.row(i).norm();
    lp.A_ub.block(row, i * n, 1, n) = -u.transpose();
    lp.b_ub(row++) = -kMinNorm;
    lp.A_ub.block(row, i * n, 1, n) = u.transpose();
    lp.b_ub(row++) = 1.0;
  }
  const solver::LpResult res = solver::solve_lp(lp);
  if (!res.optimal()) return X;
  MatrixXd Y(D, n);
  for (int i = 0; i < D; ++i) Y.row(i) = res.x.segment(i * n, n).transpose();
  return Y;
}

MatrixXd spread_orthant(int n, int D, int iters) {
  MatrixXd X = initial_layout(n, D);
  if (n == 1 || D == 0) return X;
  double best = separation(X);
  double delta = 0.2;
  for (int it = 0; it < iters && delta > kImprovementTol; ++it) {
    MatrixXd Y = ccp_step(X, delta);
    for (int i = 0; i < D; ++i) Y.row(i).normalize();
    const double r = separation(Y);
    if (r > best + kImprovementTol) {
      X = Y;
      best = r;
    } else {
      delta *= 0.5;
    }
  }
  return X;
}

template <class Set>
Polytope outer_impl(const Set& X, const DirectionSet& dirs) {
  require(dirs.cols() == X.dim(), ErrorKind::DimensionMismatch, "directions have the wrong dimension");
  if (X.is_empty()) fail(ErrorKind::EmptySet, "outer approximation of an empty set");
  VectorXd h(dirs.rows());
  for (int i = 0; i < dirs.rows(); ++i) h(i) = X.support(dirs.row(i).transpose()).value;
  return Polytope::from_halfspaces(dirs, h, MatrixXd(), VectorXd(), X.tolerance());
}

template <class Set>
Polytope inner_impl(const Set& X, const DirectionSet& dirs) {
  require(dirs.cols() == X.dim(), ErrorKind::DimensionMismatch, "directions have the wrong dimension");
  if (X.is_empty()) fail(ErrorKind::EmptySet, "inner approximation of an empty set");
  MatrixXd V(dirs.rows(), X.dim());
  for (int i = 0; i < dirs.rows(); ++i) V.row(i) = X.support(dirs.row(i).transpose()).point.transpose();
  return Polytope::from_vertices(V, X.tolerance());
}

}  // namespace

DirectionSet spread_points(int n, int D, int iters) {
  require(n >= 1, ErrorKind::InvalidArgument, "dimension must be positive");
  require(D >= 0, ErrorKind::InvalidArgument, "point count must be nonnegative");
  const MatrixXd X = spread_orthant(n, D, iters);
  const MatrixXd signs = sign_patterns(n);
  DirectionSet out(2 * n + signs.rows() * D, n);
  int row = 0;
  for (int j = 0; j < n; ++j) {
    out.row(row++) = VectorXd::Unit(n, j).transpose();
    out.row(row++) = -VectorXd::Unit(n, j).transpose();
  }
  for (int s = 0; s < signs.rows(); ++s)
    for (int i = 0; i < D; ++i) out.row(row++) = X.row(i).cwiseProduct(signs.row(s));
  return out.array() + 0.0;  // no negative zeros
}

const DirectionSet& default_directions(int n) {
  static std::mutex mu;
  static std::map<int, DirectionSet> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, spread_points(n, kDefaultSpreadCount)).first;
  return it->second;
}

double min_pairwise_angle(const DirectionSet& dirs) {
  double best = M_PI;
  for (int i = 0; i < dirs.rows(); ++i)
    for (int k = i + 1; k < dirs.rows(); ++k) {
      const double c = std::clamp(dirs.row(i).dot(dirs.row(k)) / (dirs.row(i).norm() * dirs.row(k).norm()), -1.0, 1.0);
      best = std::min(best, std::acos(c));
    }
  return best;
}

Polytope outer_polytope(const Polytope& X, const DirectionSet& dirs) { return outer_impl(X, dirs); }
Polytope outer_polytope(const ConstrainedZonotope& X, const DirectionSet& dirs) { return outer_impl(X, dirs); }
Polytope outer_polytope(const Ellipsoid& X, const DirectionSet& dirs) { return outer_impl(X, dirs); }

Polytope inner_polytope(const Polytope& X, const DirectionSet& dirs) { return inner_impl(X, dirs); }
Polytope inner_polytope(const ConstrainedZonotope& X, const DirectionSet& dirs) { return inner_impl(X, dirs); }
Polytope inner_polytope(const Ellipsoid& X, const DirectionSet& dirs) { return inner_impl(X, dirs); }

}  // namespace cvxset
