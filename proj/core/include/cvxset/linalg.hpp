#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cvxset {

using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Orthonormal basis of the null space of M (columns), rank decided relative to the
/// largest singular value.
MatrixXd null_space(const MatrixXd& M, double rank_tol = 1e-10);

/// Numerical rank of M relative to its largest singular value.
int numerical_rank(const MatrixXd& M, double rank_tol = 1e-10);

/// Indices of a maximal linearly independent subset of the rows of M, chosen greedily in
/// index order.
std::vector<int> independent_rows(const MatrixXd& M, double rank_tol = 1e-10);

/// Symmetric positive semidefinite square root.
MatrixXd psd_sqrt(const MatrixXd& S);

/// Stack two matrices vertically; either may be empty (0 rows). Column counts must agree
/// when both are non-empty.
MatrixXd vstack(const MatrixXd& top, const MatrixXd& bottom);
VectorXd vcat(const VectorXd& top, const VectorXd& bottom);

/// Block-diagonal composition.
MatrixXd block_diag(const MatrixXd& a, const MatrixXd& b);

/// Select rows of M by index.
MatrixXd select_rows(const MatrixXd& M, const std::vector<int>& rows);
VectorXd select_entries(const VectorXd& v, const std::vector<int>& idx);

/// Enumerate all 2^n sign patterns in binary order; bit k set means a negative k-th sign.
MatrixXd sign_patterns(int n);

}  // namespace cvxset
