#pragma once

// Reference computations used to check the library. None of them calls into the
// library's solvers: vertex enumeration is brute force over row subsets, supports are
// maxima over vertex lists, areas come from the shoelace formula.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <vector>

namespace oracle {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Every choice of `k` indices out of `n`, in lexicographic order.
inline void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline MatrixXd unique_rows(const MatrixXd& P, double eps) {
  std::vector<int> keep;
  for (int i = 0; i < P.rows(); ++i) {
    bool dup = false;
    for (int k : keep)
      if ((P.row(i) - P.row(k)).cwiseAbs().maxCoeff() <= eps) dup = true;
    if (!dup) keep.push_back(i);
  }
  MatrixXd out(keep.size(), P.cols());
  for (std::size_t i = 0; i < keep.size(); ++i) out.row(i) = P.row(keep[i]);
  return out;
}

/// Vertices of {A x <= b, Ae x = be} by solving every square subsystem that includes
/// all equalities. Exponential; meant for a handful of rows.
inline MatrixXd brute_vertices(const MatrixXd& A, const VectorXd& b, const MatrixXd& Ae, const VectorXd& be,
                               double eps = 1e-9) {
  const int n = static_cast<int>(std::max(A.cols(), Ae.cols()));
  const int me = static_cast<int>(Ae.rows());
  std::vector<VectorXd> found;
  const int k = n - me;
  if (k < 0) return MatrixXd(0, n);
  for_each_subset(static_cast<int>(A.rows()), k, [&](const std::vector<int>& rows) {
    MatrixXd M(n, n);
    VectorXd r(n);
    for (int i = 0; i < me; ++i) {
      M.row(i) = Ae.row(i);
      r(i) = be(i);
    }
    for (int i = 0; i < k; ++i) {
      M.row(me + i) = A.row(rows[i]);
      r(me + i) = b(rows[i]);
    }
    Eigen::FullPivLU<MatrixXd> lu(M);
    if (lu.rank() < n) return;
    const VectorXd x = lu.solve(r);
    if (A.rows() && ((A * x - b).array() > eps).any()) return;
    if (me && ((Ae * x - be).cwiseAbs().array() > eps).any()) return;
    found.push_back(x);
  });
  MatrixXd V(found.size(), n);
  for (std::size_t i = 0; i < found.size(); ++i) V.row(i) = found[i].transpose();
  return unique_rows(V, 1e-7);
}

/// max over rows of V of v'x.
inline double support(const MatrixXd& V, const VectorXd& v) { return (V * v).maxCoeff(); }

/// Closed-form support of {G u + c : |u| <= 1}.
inline double ellipsoid_support(const MatrixXd& G, const VectorXd& c, const VectorXd& v) {
  return v.dot(c) + (G.transpose() * v).norm();
}

/// Closed-form support of the zonotope {G xi + c : |xi|_inf <= 1}.
inline double zonotope_support(const MatrixXd& G, const VectorXd& c, const VectorXd& v) {
  return v.dot(c) + (G.transpose() * v).cwiseAbs().sum();
}

/// Points of a planar convex polygon sorted counterclockwise about their mean.
inline MatrixXd sort_ccw(const MatrixXd& V) {
  const Eigen::RowVector2d m = V.colwise().mean();
  std::vector<int> idx(V.rows());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int a, int b) {
    return std::atan2(V(a, 1) - m(1), V(a, 0) - m(0)) < std::atan2(V(b, 1) - m(1), V(b, 0) - m(0));
  });
  MatrixXd out(V.rows(), 2);
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = V.row(idx[i]);
  return out;
}

/// Signed area of a polygon given in order (positive when counterclockwise).
inline double shoelace(const MatrixXd& V) {
  double s = 0;
  for (int i = 0; i < V.rows(); ++i) {
    const int j = (i + 1) % V.rows();
    s += V(i, 0) * V(j, 1) - V(j, 0) * V(i, 1);
  }
  return 0.5 * s;
}

/// Euclidean projection onto the probability simplex (sort-and-threshold).
inline VectorXd project_simplex(const VectorXd& y) {
  std::vector<double> u(y.data(), y.data() + y.size());
  std::sort(u.rbegin(), u.rend());
  double cum = 0, theta = 0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cum += u[i];
    const double t = (cum - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0) theta = t;
  }
  return (y.array() - theta).cwiseMax(0.0);
}

/// True when every row of P satisfies A x <= b + eps.
inline bool rows_inside(const MatrixXd& P, const MatrixXd& A, const VectorXd& b, double eps) {
  for (int i = 0; i < P.rows(); ++i)
    if (((A * P.row(i).transpose() - b).array() > eps).any()) return false;
  return true;
}

/// Random points with standard normal coordinates.
inline MatrixXd gaussian_points(std::mt19937_64& rng, int count, int n, double scale = 1.0) {
  std::normal_distribution<double> N(0.0, scale);
  MatrixXd P(count, n);
  for (int i = 0; i < P.size(); ++i) P.data()[i] = N(rng);
  return P;
}

inline VectorXd gaussian_vector(std::mt19937_64& rng, int n) {
  return gaussian_points(rng, 1, n).row(0).transpose();
}

}  // namespace oracle
