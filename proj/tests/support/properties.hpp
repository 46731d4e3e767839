#pragma once

// Randomized property suites shared by the unit tests (few instances) and the
// acceptance runner (1000 instances each). Instances alternate between R^2 and R^3.

#include <cstdint>
#include <string>

namespace props {

struct SuiteResult {
  int instances = 0;
  int failures = 0;
  int vacuous = 0;  // instances that held trivially (an empty difference)
  std::string first_failure;

  void fail(int instance, const std::string& what) {
    if (failures++ == 0) first_failure = "instance " + std::to_string(instance) + ": " + what;
  }
};

/// h_{X + Y}(v) = h_X(v) + h_Y(v) for polytopes and constrained zonotopes.
SuiteResult support_additivity(int count, std::uint64_t seed);

/// h_{M X}(v) = h_X(M' v) for polytopes, zonotopes and ellipsoids.
SuiteResult affine_support(int count, std::uint64_t seed);

/// (X - Y) + Y subset of X for polytope, ellipsoid and zonotope subtrahends.
SuiteResult pontryagin_roundtrip(int count, std::uint64_t seed);

/// inner_polytope(X) subset of X subset of outer_polytope(X).
SuiteResult inner_outer(int count, std::uint64_t seed);

/// Constrained-zonotope operations agree with the same operations on polytopes.
SuiteResult cz_matches_polytope(int count, std::uint64_t seed);

}  // namespace props
