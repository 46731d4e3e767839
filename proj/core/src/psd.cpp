#include "cvxset/psd.hpp"

#include "cvxset/error.hpp"

#include <Eigen/Eigenvalues>

namespace cvxset::solver {

double min_eigenvalue(const MatrixXd& S) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(0.5 * (S + S.transpose()), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

std::optional<double> psd_linesearch(const MatrixXd& M0, const MatrixXd& M1, double lo, double hi,
                                     const Tolerance& tol, double lambda_tol) {
  require(M0.rows() == M0.cols() && M1.rows() == M1.cols() && M0.rows() == M1.rows(),
          ErrorKind::DimensionMismatch, "pencil matrices must be square and equal-sized");
  require(lo <= hi, ErrorKind::InvalidArgument, "empty lambda range");

  auto value = [&](double lambda) { return min_eigenvalue(M0 + lambda * M1); };
  auto feasible = [&](double v) { return v >= -tol.feas; };

  const double mid = 0.5 * (lo + hi);
  if (feasible(value(mid))) return mid;
  if (feasible(value(lo))) return lo;
  if (feasible(value(hi))) return hi;

  double a = lo;
  double b = hi;
  while (b - a > lambda_tol) {
    const double m1 = a + (b - a) / 3.0;
    const double m2 = b - (b - a) / 3.0;
    const double f1 = value(m1);
    const double f2 = value(m2);
    if (feasible(f1)) return m1;
    if (feasible(f2)) return m2;
    if (f1 < f2) a = m1;
    else b = m2;
  }
  const double last = 0.5 * (a + b);
  if (feasible(value(last))) return last;
  return std::nullopt;
}

}  // namespace cvxset::solver
