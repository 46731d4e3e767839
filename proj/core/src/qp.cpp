#include "cvxset/qp.hpp"

#include "cvxset/error.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cvxset::solver {

namespace {

constexpr double kRegularization = 1e-12;

}  // namespace

QpResult solve_qp(const QpProblem& p, const Tolerance& tol) {
  const int n = p.num_vars();
  require(p.Q.rows() == n && p.Q.cols() == n, ErrorKind::DimensionMismatch, "Q must be n x n");
  require(p.A_ub.rows() == 0 || p.A_ub.cols() == n, ErrorKind::DimensionMismatch, "A_ub columns");
  require(p.A_eq.rows() == 0 || p.A_eq.cols() == n, ErrorKind::DimensionMismatch, "A_eq columns");
  require(p.b_ub.size() == p.A_ub.rows() && p.b_eq.size() == p.A_eq.rows(), ErrorKind::DimensionMismatch,
          "rhs sizes");

  const double qscale = std::max(1.0, p.Q.cwiseAbs().maxCoeff());
  if ((p.Q - p.Q.transpose()).cwiseAbs().maxCoeff() > 1e-9 * qscale) fail(ErrorKind::NotPsd, "Q is not symmetric");
  const MatrixXd Qs = 0.5 * (p.Q + p.Q.transpose());
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(Qs, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -tol.rank * qscale) fail(ErrorKind::NotPsd, "Q has a negative eigenvalue");
  }
  const MatrixXd Q = Qs + kRegularization * MatrixXd::Identity(n, n);

  QpResult result;

  // Feasible starting vertex.
  LpProblem phase1{VectorXd::Zero(n), p.A_ub, p.b_ub, p.A_eq, p.b_eq, p.lower, p.upper};
  const LpResult start = solve_lp(phase1, tol);
  if (start.status == SolveStatus::IterationLimit) {
    result.status = SolveStatus::IterationLimit;
    return result;
  }
  if (!start.optimal()) {
    result.status = SolveStatus::Infeasible;
    return result;
  }

  // All inequalities as rows G x <= h, including finite box bounds.
  std::vector<VectorXd> grow;
  std::vector<double> hval;
  for (int i = 0; i < p.A_ub.rows(); ++i) {
    grow.emplace_back(p.A_ub.row(i).transpose());
    hval.push_back(p.b_ub(i));
  }
  for (int j = 0; j < n; ++j) {
    if (p.upper.size() && std::isfinite(p.upper(j))) {
      grow.emplace_back(VectorXd::Unit(n, j));
      hval.push_back(p.upper(j));
    }
    if (p.lower.size() && std::isfinite(p.lower(j))) {
      grow.emplace_back(-VectorXd::Unit(n, j));
      hval.push_back(-p.lower(j));
    }
  }
  const int mi = static_cast<int>(grow.size());
  MatrixXd G(mi, n);
  VectorXd h(mi);
  for (int i = 0; i < mi; ++i) {
    G.row(i) = grow[i].transpose();
    h(i) = hval[i];
  }

  const std::vector<int> eq_keep = independent_rows(p.A_eq, tol.rank);
  const MatrixXd E = select_rows(p.A_eq, eq_keep);
  const int me = static_cast<int>(E.rows());

  VectorXd x = start.x;
  std::vector<int> working;  // indices into G

  auto working_matrix = [&]() {
    MatrixXd W(me + working.size(), n);
    if (me) W.topRows(me) = E;
    for (std::size_t k = 0; k < working.size(); ++k) W.row(me + k) = G.row(working[k]);
    return W;
  };
  auto independent_of_working = [&](int i) {
    MatrixXd W = working_matrix();
    W.conservativeResize(W.rows() + 1, n);
    W.row(W.rows() - 1) = G.row(i);
    return numerical_rank(W, 1e-9) == W.rows();
  };

  const double feas = tol.feas * (1.0 + (h.size() ? h.cwiseAbs().maxCoeff() : 0.0));
  for (int i = 0; i < mi; ++i)
    if (std::abs(G.row(i).dot(x) - h(i)) <= feas && independent_of_working(i)) working.push_back(i);

  const double curv_tol = 1e-10 * qscale;
  for (int iter = 0; iter < tol.iter_max; ++iter) {
    result.iterations = iter + 1;
    const MatrixXd W = working_matrix();
    const VectorXd g = Q * x + p.q;
    const MatrixXd Z = null_space(W, 1e-12);

    VectorXd step = VectorXd::Zero(n);
    bool ray = false;
    if (Z.cols() > 0) {
      const MatrixXd H = Z.transpose() * Q * Z;
      const VectorXd gz = Z.transpose() * g;
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(H);
      const VectorXd& lam = es.eigenvalues();
      const MatrixXd& V = es.eigenvectors();
      VectorXd flat = VectorXd::Zero(gz.size());
      VectorXd curved = VectorXd::Zero(gz.size());
      for (int k = 0; k < lam.size(); ++k) {
        const double coef = V.col(k).dot(gz);
        if (lam(k) <= curv_tol) flat += coef * V.col(k);
        else curved -= (coef / lam(k)) * V.col(k);
      }
      if (flat.norm() > 1e-12 * std::max(1.0, g.norm())) {
        step = -Z * flat;
        ray = true;
      } else {
        step = Z * curved;
      }
    }

    if (step.norm() <= 1e-12 * (1.0 + x.norm())) {
      // Stationary on the working set: check inequality multipliers.
      if (W.rows() == 0) {
        result.status = SolveStatus::Optimal;
        break;
      }
      const VectorXd lambda = W.transpose().colPivHouseholderQr().solve(-g);
      int drop = -1;
      double most_negative = -std::sqrt(tol.opt) * std::max(1.0, g.norm());
      for (std::size_t k = 0; k < working.size(); ++k) {
        if (lambda(me + k) < most_negative) {
          most_negative = lambda(me + k);
          drop = static_cast<int>(k);
        }
      }
      if (drop < 0) {
        result.status = SolveStatus::Optimal;
        break;
      }
      working.erase(working.begin() + drop);
      continue;
    }

    double alpha = ray ? std::numeric_limits<double>::infinity() : 1.0;
    int blocking = -1;
    for (int i = 0; i < mi; ++i) {
      if (std::find(working.begin(), working.end(), i) != working.end()) continue;
      const double rate = G.row(i).dot(step);
      if (rate <= 1e-14 * step.norm() * G.row(i).norm()) continue;
      const double a = std::max(0.0, (h(i) - G.row(i).dot(x)) / rate);
      if (a < alpha) {
        alpha = a;
        blocking = i;
      }
    }
    if (!std::isfinite(alpha)) {
      result.status = SolveStatus::Unbounded;
      return result;
    }
    x += alpha * step;
    if (blocking >= 0) working.push_back(blocking);
    if (iter + 1 == tol.iter_max) result.status = SolveStatus::IterationLimit;
  }
  if (result.status != SolveStatus::Optimal) {
    result.status = SolveStatus::IterationLimit;
    return result;
  }
  result.x = x;
  result.objective = 0.5 * x.dot(p.Q * x) + p.q.dot(x);
  return result;
}

}  // namespace cvxset::solver
