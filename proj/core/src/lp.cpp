#include "cvxset/lp.hpp"

#include "cvxset/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

namespace cvxset::solver {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr int kRefactorInterval = 400;
constexpr int kStallBeforeBland = 30;

enum class State : std::uint8_t { Basic, Lower, Upper, Free };

// Equality-form problem  A z = b,  lo <= z <= up  solved by a dense tableau simplex
// where nonbasic variables sit at one of their bounds (or at zero when free).
class BoundedSimplex {
 public:
  BoundedSimplex(MatrixXd A, VectorXd b, VectorXd lo, VectorXd up, const Tolerance& tol)
      : A_(std::move(A)), b_(std::move(b)), lo_(std::move(lo)), up_(std::move(up)), tol_(tol) {}

  SolveStatus run(const VectorXd& cost, int num_structural, int num_slack) {
    m_ = static_cast<int>(A_.rows());
    ncol_ = static_cast<int>(A_.cols());
    x_ = VectorXd::Zero(ncol_);
    state_.assign(ncol_, State::Lower);
    for (int j = 0; j < ncol_; ++j) set_nonbasic_default(j);

    // Residual after placing nonbasics; slacks absorb non-negative residuals of
    // inequality rows, everything else gets an artificial.
    VectorXd r = b_ - A_ * x_;
    basis_.assign(m_, -1);
    std::vector<int> art_rows;
    std::vector<double> art_sign;
    for (int i = 0; i < m_; ++i) {
      const int slack = (i < num_slack) ? num_structural + i : -1;
      if (slack >= 0 && r(i) >= 0.0) {
        basis_[i] = slack;
        state_[slack] = State::Basic;
      } else {
        art_rows.push_back(i);
        art_sign.push_back(r(i) >= 0.0 ? 1.0 : -1.0);
      }
    }
    const int num_art = static_cast<int>(art_rows.size());
    first_art_ = ncol_;
    if (num_art > 0) {
      A_.conservativeResize(m_, ncol_ + num_art);
      A_.rightCols(num_art).setZero();
      lo_.conservativeResize(ncol_ + num_art);
      up_.conservativeResize(ncol_ + num_art);
      x_.conservativeResize(ncol_ + num_art);
      for (int k = 0; k < num_art; ++k) {
        const int col = ncol_ + k;
        A_(art_rows[k], col) = art_sign[k];
        lo_(col) = 0.0;
        up_(col) = kInf;
        x_(col) = 0.0;
        basis_[art_rows[k]] = col;
        state_.push_back(State::Basic);
      }
      ncol_ += num_art;
    }
    active_cols_ = first_art_;

    // Initial basis is a signed identity, so B^-1 A just flips row signs.
    T_ = A_;
    xB_ = VectorXd::Zero(m_);
    for (int i = 0; i < m_; ++i) {
      const double sgn = A_(i, basis_[i]);
      T_.row(i) *= sgn;
      xB_(i) = sgn * r(i);
    }

    if (num_art > 0) {
      VectorXd phase1 = VectorXd::Zero(ncol_);
      phase1.tail(num_art).setOnes();
      const SolveStatus s1 = iterate(phase1);
      if (s1 == SolveStatus::IterationLimit) return s1;
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i)
        if (basis_[i] >= first_art_) infeas += std::abs(xB_(i));
      const double scale = 1.0 + (b_.size() > 0 ? b_.cwiseAbs().maxCoeff() : 0.0);
      if (infeas > tol_.feas * scale) return SolveStatus::Infeasible;
      drop_artificials();
    }

    VectorXd c2 = VectorXd::Zero(ncol_);
    c2.head(cost.size()) = cost;
    return iterate(c2);
  }

  VectorXd values() const {
    VectorXd v = x_;
    for (int i = 0; i < m_; ++i) v(basis_[i]) = xB_(i);
    return v;
  }

  int iterations() const { return iterations_; }

 private:
  void set_nonbasic_default(int j) {
    if (std::isfinite(lo_(j))) {
      x_(j) = lo_(j);
      state_[j] = State::Lower;
    } else if (std::isfinite(up_(j))) {
      x_(j) = up_(j);
      state_[j] = State::Upper;
    } else {
      x_(j) = 0.0;
      state_[j] = State::Free;
    }
  }

  void refactor() {
    MatrixXd B(m_, m_);
    for (int i = 0; i < m_; ++i) B.col(i) = A_.col(basis_[i]);
    Eigen::PartialPivLU<MatrixXd> lu(B);
    T_.leftCols(first_art_) = lu.solve(A_.leftCols(first_art_));
    VectorXd xn = x_;
    for (int i = 0; i < m_; ++i) xn(basis_[i]) = 0.0;
    xB_ = lu.solve(b_ - A_ * xn);
    since_refactor_ = 0;
    reprice();
  }

  // Reduced costs d = c - T' c_B over the maintained columns.
  void reprice() {
    if (cost_.size() == 0) return;
    VectorXd cB(m_);
    for (int i = 0; i < m_; ++i) cB(i) = cost_(basis_[i]);
    d_ = VectorXd::Zero(ncol_);
    d_.head(first_art_) = cost_.head(first_art_) - T_.leftCols(first_art_).transpose() * cB;
  }

  // Artificial columns are never read after they leave the basis, so only the first
  // first_art_ columns of the tableau are kept current.
  void pivot(int r, int j) {
    const int k = first_art_;
    const double piv = T_(r, j);
    T_.row(r).head(k) /= piv;
    VectorXd col = T_.col(j);
    col(r) = 0.0;
    T_.leftCols(k).noalias() -= col * T_.row(r).head(k);
    T_.col(j).setZero();
    T_(r, j) = 1.0;
    if (d_.size()) {
      const double dj = d_(j);
      d_.head(k) -= dj * T_.row(r).head(k).transpose();
      d_(j) = 0.0;
    }
    ++since_refactor_;
  }

  SolveStatus iterate(const VectorXd& cost) {
    const double cscale = std::max(1.0, cost.cwiseAbs().maxCoeff());
    const double dtol = tol_.opt * cscale;
    cost_ = cost;
    reprice();
    int stall = 0;
    bool bland = false;
    bool verified = false;
    while (true) {
      if (iterations_ >= tol_.iter_max) return SolveStatus::IterationLimit;
      if (since_refactor_ >= kRefactorInterval) refactor();

      const VectorXd& d = d_;

      int enter = -1;
      double dir = 0.0;
      double best = 0.0;
      for (int j = 0; j < ncol_; ++j) {
        if (state_[j] == State::Basic || j >= active_cols_) continue;
        if (!(up_(j) > lo_(j))) continue;
        double cand_dir = 0.0;
        if ((state_[j] == State::Lower || state_[j] == State::Free) && d(j) < -dtol) cand_dir = 1.0;
        else if ((state_[j] == State::Upper || state_[j] == State::Free) && d(j) > dtol) cand_dir = -1.0;
        if (cand_dir == 0.0) continue;
        if (bland) {
          enter = j;
          dir = cand_dir;
          break;
        }
        if (std::abs(d(j)) > best) {
          best = std::abs(d(j));
          enter = j;
          dir = cand_dir;
        }
      }

      if (enter < 0) {
        if (verified || since_refactor_ == 0) return SolveStatus::Optimal;
        refactor();
        verified = true;
        continue;
      }
      verified = false;

      // Harris two-pass ratio test.
      const auto alpha = T_.col(enter);
      double theta_max = kInf;
      for (int i = 0; i < m_; ++i) {
        const double delta = -dir * alpha(i);
        const int bv = basis_[i];
        if (delta < -kPivotTol && std::isfinite(lo_(bv)))
          theta_max = std::min(theta_max, (xB_(i) - lo_(bv) + tol_.feas) / -delta);
        else if (delta > kPivotTol && std::isfinite(up_(bv)))
          theta_max = std::min(theta_max, (up_(bv) - xB_(i) + tol_.feas) / delta);
      }
      const double self_range = up_(enter) - lo_(enter);
      int leave = -1;
      double theta = kInf;
      double best_piv = 0.0;
      for (int i = 0; i < m_; ++i) {
        const double delta = -dir * alpha(i);
        const int bv = basis_[i];
        double ratio = kInf;
        if (delta < -kPivotTol && std::isfinite(lo_(bv))) ratio = (xB_(i) - lo_(bv)) / -delta;
        else if (delta > kPivotTol && std::isfinite(up_(bv))) ratio = (up_(bv) - xB_(i)) / delta;
        else continue;
        if (ratio > theta_max) continue;
        const bool better = bland ? (leave < 0 || basis_[i] < basis_[leave]) : std::abs(delta) > best_piv;
        if (better) {
          leave = i;
          best_piv = std::abs(delta);
          theta = std::max(ratio, 0.0);
        }
      }
      if (std::isfinite(self_range) && (leave < 0 || self_range <= theta)) {
        // Bound flip without a basis change.
        theta = self_range;
        leave = -1;
      }
      if (leave < 0 && !std::isfinite(self_range)) return SolveStatus::Unbounded;

      ++iterations_;
      if (theta <= 1e-12) {
        if (++stall > kStallBeforeBland) bland = true;
      } else {
        stall = 0;
        bland = false;
      }

      for (int i = 0; i < m_; ++i) xB_(i) += -dir * alpha(i) * theta;
      const double entering_value = x_(enter) + dir * theta;

      if (leave < 0) {
        x_(enter) = entering_value;
        state_[enter] = dir > 0 ? State::Upper : State::Lower;
        continue;
      }

      const int out = basis_[leave];
      const double delta = -dir * alpha(leave);
      if (delta < 0) {
        x_(out) = lo_(out);
        state_[out] = State::Lower;
      } else {
        x_(out) = up_(out);
        state_[out] = State::Upper;
      }
      pivot(leave, enter);
      basis_[leave] = enter;
      state_[enter] = State::Basic;
      xB_(leave) = entering_value;
    }
  }

  // After a successful phase 1: pivot basic artificials out where possible, delete
  // rows that turned out to be linearly dependent, then drop artificial columns.
  void drop_artificials() {
    std::vector<int> redundant;
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < first_art_) continue;
      int best = -1;
      double best_abs = 1e-9;
      for (int j = 0; j < first_art_; ++j) {
        if (state_[j] == State::Basic) continue;
        if (std::abs(T_(r, j)) > best_abs) {
          best_abs = std::abs(T_(r, j));
          best = j;
        }
      }
      if (best < 0) {
        redundant.push_back(r);
        continue;
      }
      const int out = basis_[r];
      x_(out) = 0.0;
      state_[out] = State::Lower;
      pivot(r, best);
      basis_[r] = best;
      state_[best] = State::Basic;
      xB_(r) = x_(best);
    }

    std::vector<int> keep_rows;
    for (int r = 0; r < m_; ++r)
      if (std::find(redundant.begin(), redundant.end(), r) == redundant.end()) keep_rows.push_back(r);

    const int ncol = first_art_;
    MatrixXd T(keep_rows.size(), ncol);
    MatrixXd A(keep_rows.size(), ncol);
    VectorXd b(keep_rows.size());
    VectorXd xB(keep_rows.size());
    std::vector<int> basis(keep_rows.size());
    for (std::size_t k = 0; k < keep_rows.size(); ++k) {
      const int r = keep_rows[k];
      T.row(k) = T_.row(r).head(ncol);
      A.row(k) = A_.row(r).head(ncol);
      b(k) = b_(r);
      xB(k) = xB_(r);
      basis[k] = basis_[r];
    }
    T_ = std::move(T);
    A_ = std::move(A);
    b_ = std::move(b);
    xB_ = std::move(xB);
    basis_ = std::move(basis);
    lo_.conservativeResize(ncol);
    up_.conservativeResize(ncol);
    x_.conservativeResize(ncol);
    state_.resize(ncol);
    m_ = static_cast<int>(keep_rows.size());
    ncol_ = ncol;
    active_cols_ = ncol;
  }

  MatrixXd A_;
  VectorXd b_;
  VectorXd lo_;
  VectorXd up_;
  Tolerance tol_;

  int m_ = 0;
  int ncol_ = 0;
  int first_art_ = 0;
  int active_cols_ = std::numeric_limits<int>::max();
  MatrixXd T_;
  VectorXd cost_;
  VectorXd d_;
  VectorXd xB_;
  VectorXd x_;
  std::vector<int> basis_;
  std::vector<State> state_;
  int iterations_ = 0;
  int since_refactor_ = 0;
};

}  // namespace

LpResult solve_lp(const LpProblem& p, const Tolerance& tol) {
  const int n = p.num_vars();
  const int m_ub = static_cast<int>(p.A_ub.rows());
  const int m_eq = static_cast<int>(p.A_eq.rows());
  require(m_ub == 0 || p.A_ub.cols() == n, ErrorKind::DimensionMismatch, "A_ub columns != |c|");
  require(m_eq == 0 || p.A_eq.cols() == n, ErrorKind::DimensionMismatch, "A_eq columns != |c|");
  require(p.b_ub.size() == m_ub, ErrorKind::DimensionMismatch, "b_ub size != rows of A_ub");
  require(p.b_eq.size() == m_eq, ErrorKind::DimensionMismatch, "b_eq size != rows of A_eq");
  require(p.lower.size() == 0 || p.lower.size() == n, ErrorKind::DimensionMismatch, "lower bound size");
  require(p.upper.size() == 0 || p.upper.size() == n, ErrorKind::DimensionMismatch, "upper bound size");

  LpResult result;
  VectorXd lo = p.lower.size() ? p.lower : VectorXd::Constant(n, -kInf);
  VectorXd up = p.upper.size() ? p.upper : VectorXd::Constant(n, kInf);
  for (int j = 0; j < n; ++j) {
    if (lo(j) > up(j) + tol.feas) {
      result.status = SolveStatus::Infeasible;
      return result;
    }
    if (lo(j) > up(j)) up(j) = lo(j);
  }

  // Row equilibration; all-zero rows are checked directly and dropped.
  std::vector<int> ub_rows;
  std::vector<int> eq_rows;
  for (int i = 0; i < m_ub; ++i) {
    if (p.A_ub.row(i).cwiseAbs().maxCoeff() > 0.0) ub_rows.push_back(i);
    else if (p.b_ub(i) < -tol.feas) return result;
  }
  for (int i = 0; i < m_eq; ++i) {
    if (p.A_eq.row(i).cwiseAbs().maxCoeff() > 0.0) eq_rows.push_back(i);
    else if (std::abs(p.b_eq(i)) > tol.feas) return result;
  }
  const int mu = static_cast<int>(ub_rows.size());
  const int me = static_cast<int>(eq_rows.size());
  const int m = mu + me;
  MatrixXd A = MatrixXd::Zero(m, n + mu);
  VectorXd b(m);
  for (int k = 0; k < mu; ++k) {
    const double s = 1.0 / p.A_ub.row(ub_rows[k]).cwiseAbs().maxCoeff();
    A.row(k).head(n) = s * p.A_ub.row(ub_rows[k]);
    A(k, n + k) = 1.0;
    b(k) = s * p.b_ub(ub_rows[k]);
  }
  for (int k = 0; k < me; ++k) {
    const double s = 1.0 / p.A_eq.row(eq_rows[k]).cwiseAbs().maxCoeff();
    A.row(mu + k).head(n) = s * p.A_eq.row(eq_rows[k]);
    b(mu + k) = s * p.b_eq(eq_rows[k]);
  }
  VectorXd lo_all(n + mu);
  VectorXd up_all(n + mu);
  lo_all << lo, VectorXd::Zero(mu);
  up_all << up, VectorXd::Constant(mu, kInf);

  BoundedSimplex simplex(std::move(A), std::move(b), std::move(lo_all), std::move(up_all), tol);
  result.status = simplex.run(p.c, n, mu);
  result.iterations = simplex.iterations();
  if (result.status != SolveStatus::Optimal) return result;

  result.x = simplex.values().head(n);
  for (int j = 0; j < n; ++j) result.x(j) = std::clamp(result.x(j), lo(j), up(j));
  result.objective = p.c.dot(result.x);
  return result;
}

}  // namespace cvxset::solver
