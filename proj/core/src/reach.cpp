#include "cvxset/reach.hpp"

#include "cvxset/error.hpp"
#include "cvxset/lp.hpp"

#include <Eigen/LU>

#include <limits>
#include <random>

namespace cvxset {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_box(const Polytope& P) {
  if (P.is_empty()) return false;
  const auto [lo, hi] = P.bounding_box();
  const MatrixXd signs = sign_patterns(P.dim());
  for (int s = 0; s < signs.rows(); ++s) {
    VectorXd v(P.dim());
    for (int j = 0; j < P.dim(); ++j) v(j) = signs(s, j) > 0 ? hi(j) : lo(j);
    if (!P.contains(v)) return false;
  }
  return true;
}

// Smallest constrained-zonotope form: boxes become rect zonotopes.
ConstrainedZonotope tight_czonotope(const AnySet& s) {
  if (const auto* p = std::get_if<Polytope>(&s); p && is_box(*p)) {
    const auto [lo, hi] = p->bounding_box();
    return ConstrainedZonotope::rect(lo, hi, p->tolerance());
  }
  return as_czonotope(s);
}

bool square_invertible(const MatrixXd& M, double rank_tol) {
  return M.rows() == M.cols() && numerical_rank(M, rank_tol) == M.rows();
}

std::pair<VectorXd, VectorXd> box_of(const AnySet& s) {
  return std::visit([](const auto& x) { return x.bounding_box(); }, s);
}

VectorXd interior_of(const AnySet& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return p->interior_point();
  if (const auto* z = std::get_if<ConstrainedZonotope>(&s)) return z->interior_point();
  return std::get<Ellipsoid>(s).c();
}

RcResult rc_polytope(const RcProblem& p) {
  RcResult out;
  out.repr = Representation::Polytope;
  out.K.assign(p.N + 1, AnySet{});
  const Polytope S = as_polytope(p.S);
  const Polytope BU = as_polytope(p.U).affine_map(-p.B);
  std::variant<Polytope, Ellipsoid> FW;
  if (const auto* e = std::get_if<Ellipsoid>(&p.W)) {
    if (square_invertible(p.F, e->tolerance().rank)) FW = e->affine_map(p.F);
    else {
      const auto [lo, hi] = e->bounding_box();
      FW = Polytope::rect(lo, hi, e->tolerance()).affine_map(p.F);
    }
  } else {
    FW = as_polytope(p.W).affine_map(p.F);
  }

  Polytope K = as_polytope(p.T);
  out.K[p.N] = K;
  for (int t = p.N - 1; t >= 0; --t) {
    if (!K.is_empty()) {
      const Polytope D = std::visit([&](const auto& w) { return pontryagin_difference(K, w); }, FW);
      if (D.is_empty()) {
        K = D;
      } else {
        K = intersect(S, minkowski_sum(D, BU).inverse_affine_map(p.A));
        if (!K.is_empty()) K = K.reduce();
      }
    }
    out.K[t] = K;
  }
  out.empty = K.is_empty();
  return out;
}

RcResult rc_czonotope(const RcProblem& p, DifferenceStrategy strategy) {
  RcResult out;
  out.repr = Representation::CZonotope;
  out.K.assign(p.N + 1, AnySet{});
  out.strategies.assign(p.N, strategy);
  const ConstrainedZonotope BU = tight_czonotope(p.U).affine_map(-p.B);
  std::variant<ConstrainedZonotope, Ellipsoid> FW;
  if (const auto* e = std::get_if<Ellipsoid>(&p.W)) {
    if (square_invertible(p.F, e->tolerance().rank)) FW = e->affine_map(p.F);
    else FW = ConstrainedZonotope::interval_hull(*e).affine_map(p.F);
  } else {
    FW = tight_czonotope(p.W).affine_map(p.F);
  }

  ConstrainedZonotope K = tight_czonotope(p.T);
  out.K[p.N] = K;
  for (int t = p.N - 1; t >= 0; --t) {
    if (!K.is_empty()) {
      DifferenceStrategy used = strategy;
      const ConstrainedZonotope D =
          std::visit([&](const auto& w) { return pontryagin_difference(K, w, strategy, &used); }, FW);
      out.strategies[t] = used;
      if (D.is_empty()) {
        K = D;
      } else {
        const ConstrainedZonotope Z = minkowski_sum(D, BU).inverse_affine_map(p.A);
        if (const auto* sp = std::get_if<Polytope>(&p.S)) K = intersect(Z, *sp);
        else K = intersect(Z, as_czonotope(p.S));
      }
    }
    out.K[t] = K;
  }
  out.empty = K.is_empty();
  return out;
}

}  // namespace

std::string_view to_string(Representation r) {
  return r == Representation::Polytope ? "polytope" : "czonotope";
}

void RcProblem::validate() const {
  const int n = static_cast<int>(A.rows());
  require(A.cols() == n && n > 0, ErrorKind::DimensionMismatch, "A must be square");
  require(B.rows() == n && F.rows() == n, ErrorKind::DimensionMismatch, "B and F need one row per state");
  require(dim(U) == B.cols(), ErrorKind::DimensionMismatch, "U must match the columns of B");
  require(dim(W) == F.cols(), ErrorKind::DimensionMismatch, "W must match the columns of F");
  require(dim(S) == n && dim(T) == n, ErrorKind::DimensionMismatch, "S and T must live in the state space");
  require(N >= 1, ErrorKind::InvalidArgument, "horizon must be at least 1");
  if (!square_invertible(A, tolerance(S).rank)) fail(ErrorKind::SingularMatrix, "A must be invertible");
}

RcResult rc_set(const RcProblem& p, Representation repr, DifferenceStrategy strategy) {
  p.validate();
  return repr == Representation::Polytope ? rc_polytope(p) : rc_czonotope(p, strategy);
}

OneStepReport verify_one_step(const AnySet& K_t, const AnySet& K_next, const RcProblem& p, int n_samples,
                              unsigned seed) {
  OneStepReport report;
  if (is_empty(K_t) || n_samples <= 0) return report;
  require(kind_of(K_next) != SetKind::Ellipsoid && kind_of(p.U) != SetKind::Ellipsoid,
          ErrorKind::UnsupportedOperandPair, "one-step audit needs polyhedral K_next and U");
  const int n = static_cast<int>(p.A.rows());
  const int m = static_cast<int>(p.B.cols());
  const Tolerance& tol = tolerance(K_t);

  const Polytope U = as_polytope(p.U).to_hrep();
  const auto [wlo, whi] = box_of(p.W);
  const MatrixXd signs = sign_patterns(static_cast<int>(wlo.size()));
  std::vector<VectorXd> Fw;
  for (int s = 0; s < signs.rows(); ++s) {
    VectorXd w(wlo.size());
    for (int j = 0; j < w.size(); ++j) w(j) = signs(s, j) > 0 ? whi(j) : wlo(j);
    Fw.push_back(p.F * w);
  }
  const int nw = static_cast<int>(Fw.size());

  std::optional<Polytope> Kp;
  std::optional<ConstrainedZonotope> Kz;
  if (const auto* z = std::get_if<ConstrainedZonotope>(&K_next)) Kz = *z;
  else Kp = std::get<Polytope>(K_next).to_hrep();
  if ((Kp && Kp->is_empty()) || (Kz && Kz->is_empty())) fail(ErrorKind::EmptySet, "K_next is empty");

  const VectorXd center = interior_of(K_t);
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < n_samples; ++i) {
    VectorXd d(n);
    for (int j = 0; j < n; ++j) d(j) = normal(rng);
    VectorXd x = support(K_t, d).point;
    if (i % 2 == 1) x = 0.5 * (x + center);

    solver::LpProblem lp;
    if (Kp) {
      const MatrixXd& A = Kp->A();
      const MatrixXd& Ae = Kp->Ae();
      lp.c = VectorXd::Zero(m);
      lp.A_ub = MatrixXd(A.rows() * nw + U.A().rows(), m);
      lp.b_ub.resize(lp.A_ub.rows());
      lp.A_eq = MatrixXd(Ae.rows() * nw + U.Ae().rows(), m);
      lp.b_eq.resize(lp.A_eq.rows());
      for (int k = 0; k < nw; ++k) {
        const VectorXd drift = p.A * x + Fw[k];
        lp.A_ub.middleRows(k * A.rows(), A.rows()) = A * p.B;
        lp.b_ub.segment(k * A.rows(), A.rows()) = Kp->b() - A * drift;
        if (Ae.rows()) {
          lp.A_eq.middleRows(k * Ae.rows(), Ae.rows()) = Ae * p.B;
          lp.b_eq.segment(k * Ae.rows(), Ae.rows()) = Kp->be() - Ae * drift;
        }
      }
      lp.A_ub.bottomRows(U.A().rows()) = U.A();
      lp.b_ub.tail(U.A().rows()) = U.b();
      if (U.Ae().rows()) {
        lp.A_eq.bottomRows(U.Ae().rows()) = U.Ae();
        lp.b_eq.tail(U.Ae().rows()) = U.be();
      }
    } else {
      // Variables (u, xi_1, ..., xi_nw) with G xi_k + c = A x + B u + F w_k.
      const int L = Kz->latent_dim();
      const int M = Kz->num_equalities();
      const int nv = m + nw * L;
      lp.c = VectorXd::Zero(nv);
      lp.lower = VectorXd::Constant(nv, -1.0);
      lp.upper = VectorXd::Constant(nv, 1.0);
      lp.lower.head(m).setConstant(-kInf);
      lp.upper.head(m).setConstant(kInf);
      lp.A_eq = MatrixXd::Zero(nw * (n + M) + U.Ae().rows(), nv);
      lp.b_eq.resize(lp.A_eq.rows());
      for (int k = 0; k < nw; ++k) {
        const int r = k * (n + M);
        lp.A_eq.block(r, 0, n, m) = -p.B;
        lp.A_eq.block(r, m + k * L, n, L) = Kz->G();
        lp.b_eq.segment(r, n) = p.A * x + Fw[k] - Kz->c();
        if (M) {
          lp.A_eq.block(r + n, m + k * L, M, L) = Kz->Ae();
          lp.b_eq.segment(r + n, M) = Kz->be();
        }
      }
      if (U.Ae().rows()) {
        lp.A_eq.bottomLeftCorner(U.Ae().rows(), m) = U.Ae();
        lp.b_eq.tail(U.Ae().rows()) = U.be();
      }
      lp.A_ub = MatrixXd::Zero(U.A().rows(), nv);
      lp.A_ub.leftCols(m) = U.A();
      lp.b_ub = U.b();
    }
    if (!solver::solve_lp(lp, tol).optimal()) report.violations.push_back(x);
    ++report.samples;
  }
  return report;
}

MatrixXd TrajProblem::A() const {
  MatrixXd out = MatrixXd::Zero(4, 4);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out.block(2 * i, 2 * j, 2, 2) = A_axis(i, j) * MatrixXd::Identity(2, 2);
  return out;
}

MatrixXd TrajProblem::B() const {
  MatrixXd out = MatrixXd::Zero(4, 2);
  for (int i = 0; i < 2; ++i) out.block(2 * i, 0, 2, 2) = B_axis(i, 0) * MatrixXd::Identity(2, 2);
  return out;
}

void TrajProblem::validate() const {
  require(A_axis.rows() == 2 && A_axis.cols() == 2, ErrorKind::DimensionMismatch, "per-axis A must be 2 x 2");
  require(B_axis.rows() == 2 && B_axis.cols() == 1, ErrorKind::DimensionMismatch, "per-axis B must be 2 x 1");
  require(x0.size() == 4, ErrorKind::DimensionMismatch, "initial state must be in R^4");
  require(U.dim() == 2, ErrorKind::DimensionMismatch, "input set must be planar");
  require(N >= 1, ErrorKind::InvalidArgument, "horizon must be at least 1");
  for (const Waypoint& w : waypoints) {
    require(w.index >= 1 && w.index <= N, ErrorKind::InvalidArgument, "waypoint index outside [1, N]");
    require(w.position.size() == 2, ErrorKind::DimensionMismatch, "waypoint positions are planar");
  }
}

TrajProblem double_integrator_trajectory(double dt, int N) {
  TrajProblem p;
  p.A_axis = (MatrixXd(2, 2) << 1.0, dt, 0.0, 1.0).finished();
  p.B_axis = (MatrixXd(2, 1) << 0.5 * dt * dt, dt).finished();
  p.x0 = VectorXd::Zero(4);
  p.N = N;
  p.U = ConstrainedZonotope::rect(-VectorXd::Ones(2), VectorXd::Ones(2));
  return p;
}

ConstrainedZonotope forward_trajectory_set(const TrajProblem& p) {
  p.validate();
  const int N = p.N;
  const MatrixXd A = p.A();
  const MatrixXd B = p.B();
  // x_{t+1} = A^{t+1} x0 + sum_{k <= t} A^{t-k} B u_k
  std::vector<MatrixXd> powers(N + 1, MatrixXd::Identity(4, 4));
  for (int t = 1; t <= N; ++t) powers[t] = A * powers[t - 1];
  MatrixXd M = MatrixXd::Zero(4 * N, 2 * N);
  VectorXd v(4 * N);
  for (int t = 0; t < N; ++t) {
    v.segment(4 * t, 4) = powers[t + 1] * p.x0;
    for (int k = 0; k <= t; ++k) M.block(4 * t, 2 * k, 4, 2) = powers[t - k] * B;
  }
  ConstrainedZonotope D = p.U.cartesian_power(N).affine_map(M, v);
  if (!p.waypoints.empty()) {
    std::vector<int> dims;
    VectorXd values(2 * p.waypoints.size());
    for (std::size_t i = 0; i < p.waypoints.size(); ++i) {
      const int base = 4 * (p.waypoints[i].index - 1);
      dims.push_back(base);
      dims.push_back(base + 1);
      values.segment(2 * i, 2) = p.waypoints[i].position;
    }
    D = D.slice(dims, values);
  }
  if (D.is_empty()) fail(ErrorKind::EmptySet, "waypoints are unreachable");
  return D;
}

}  // namespace cvxset
