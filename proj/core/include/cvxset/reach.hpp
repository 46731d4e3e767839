#pragma once

#include "cvxset/czonotope.hpp"
#include "cvxset/sets.hpp"

#include <optional>
#include <vector>

namespace cvxset {

/// Backward reachability data for x+ = A x + B u + F w with u in U, w in W.
struct RcProblem {
  MatrixXd A;
  MatrixXd B;
  MatrixXd F;
  AnySet U;
  AnySet W;
  AnySet S;
  AnySet T;
  int N = 1;

  /// Throws DimensionMismatch, SingularMatrix (A not invertible) or InvalidArgument.
  void validate() const;
};

enum class Representation { Polytope, CZonotope };

std::string_view to_string(Representation r);

struct RcResult {
  Representation repr = Representation::Polytope;
  /// K[t] for t = 0..N; K[N] is the target.
  std::vector<AnySet> K;
  /// Subtraction strategy applied at each step t = 0..N-1 (CZ path only).
  std::vector<DifferenceStrategy> strategies;
  bool empty = false;

  const AnySet& K0() const { return K.front(); }
};

/// K_N = T, K_t = S intersect A^-1((K_{t+1} minus F W) plus (-B) U).
///
/// The polytope path is exact. The CZ path is an inner approximation when the
/// subtraction falls back to ScaledInner or W is an ellipsoid. Once a step is empty
/// every earlier set is empty as well.
RcResult rc_set(const RcProblem& p, Representation repr,
                DifferenceStrategy strategy = DifferenceStrategy::Auto);

struct OneStepReport {
  int samples = 0;
  /// Sampled states of K_t with no admissible input.
  std::vector<VectorXd> violations;
  bool ok() const { return violations.empty(); }
};

/// Samples K_t (support points along fixed-seed random directions and midpoints
/// toward an interior point) and solves one LP per sample for an input u in U with
/// A x + B u + F w in K_next for every vertex w of W's interval hull.
OneStepReport verify_one_step(const AnySet& K_t, const AnySet& K_next, const RcProblem& p, int n_samples,
                              unsigned seed = 7);

/// Position waypoint: [I 0] x_index = position.
struct Waypoint {
  int index = 1;
  VectorXd position;
};

/// Planar robot with identical per-axis dynamics. The state is (position, velocity)
/// in R^4 and the input acts on both axes.
struct TrajProblem {
  MatrixXd A_axis;  // 2 x 2
  MatrixXd B_axis;  // 2 x 1
  VectorXd x0;      // R^4
  int N = 1;
  ConstrainedZonotope U;  // R^2
  std::vector<Waypoint> waypoints;

  MatrixXd A() const;
  MatrixXd B() const;
  void validate() const;
};

/// Double-integrator axis model with sampling time dt.
TrajProblem double_integrator_trajectory(double dt, int N);

/// {(x_1, ..., x_N) in R^{4N}} reachable from x0 with inputs in U that meet every
/// waypoint. EmptySet when the waypoints are unreachable.
ConstrainedZonotope forward_trajectory_set(const TrajProblem& p);

}  // namespace cvxset
