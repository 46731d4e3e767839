#include "cvxset/linalg.hpp"

#include "cvxset/error.hpp"

#include <Eigen/SVD>

namespace cvxset {

MatrixXd null_space(const MatrixXd& M, double rank_tol) {
  const int n = static_cast<int>(M.cols());
  if (M.rows() == 0) return MatrixXd::Identity(n, n);
  Eigen::JacobiSVD<MatrixXd> svd(M, Eigen::ComputeFullV);
  const VectorXd& s = svd.singularValues();
  const double smax = s.size() > 0 ? s(0) : 0.0;
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * std::max(smax, 1.0)) ++r;
  return svd.matrixV().rightCols(n - r);
}

int numerical_rank(const MatrixXd& M, double rank_tol) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<MatrixXd> svd(M);
  const VectorXd& s = svd.singularValues();
  int r = 0;
  for (int i = 0; i < s.size(); ++i)
    if (s(i) > rank_tol * std::max(s(0), 1.0)) ++r;
  return r;
}

std::vector<int> independent_rows(const MatrixXd& M, double rank_tol) {
  // Incremental Gram-Schmidt over the rows, in index order.
  std::vector<int> keep;
  const int n = static_cast<int>(M.cols());
  MatrixXd basis(n, 0);
  double scale = 0.0;
  for (int i = 0; i < M.rows(); ++i) scale = std::max(scale, M.row(i).norm());
  for (int i = 0; i < M.rows(); ++i) {
    VectorXd v = M.row(i).transpose();
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < basis.cols(); ++k) v -= basis.col(k).dot(v) * basis.col(k);
    const double nv = v.norm();
    if (nv > std::sqrt(rank_tol) * std::max(scale, 1e-300) && nv > 1e-14) {
      basis.conservativeResize(n, basis.cols() + 1);
      basis.col(basis.cols() - 1) = v / nv;
      keep.push_back(i);
    }
  }
  return keep;
}

MatrixXd psd_sqrt(const MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (S + S.transpose()));
  VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

MatrixXd vstack(const MatrixXd& top, const MatrixXd& bottom) {
  if (top.rows() == 0 && top.cols() == 0) return bottom;
  if (bottom.rows() == 0 && bottom.cols() == 0) return top;
  require(top.cols() == bottom.cols(), ErrorKind::DimensionMismatch, "vstack column mismatch");
  MatrixXd out(top.rows() + bottom.rows(), top.cols());
  out << top, bottom;
  return out;
}

VectorXd vcat(const VectorXd& top, const VectorXd& bottom) {
  VectorXd out(top.size() + bottom.size());
  out << top, bottom;
  return out;
}

MatrixXd block_diag(const MatrixXd& a, const MatrixXd& b) {
  MatrixXd out = MatrixXd::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

MatrixXd select_rows(const MatrixXd& M, const std::vector<int>& rows) {
  MatrixXd out(rows.size(), M.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = M.row(rows[i]);
  return out;
}

VectorXd select_entries(const VectorXd& v, const std::vector<int>& idx) {
  VectorXd out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out(i) = v(idx[i]);
  return out;
}

MatrixXd sign_patterns(int n) {
  const int count = 1 << n;
  MatrixXd out(count, n);
  for (int k = 0; k < count; ++k)
    for (int j = 0; j < n; ++j) out(k, j) = (k >> j) & 1 ? -1.0 : 1.0;
  return out;
}

}  // namespace cvxset
