#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cvxset {

enum class ErrorKind {
  DimensionMismatch,
  EmptySet,
  EmptyInterior,
  UnboundedPolytope,
  SingularMatrix,
  RankDeficient,
  NotPositiveDefinite,
  NotPsd,
  DegenerateInput,
  Infeasible,
  Unbounded,
  IterationLimit,
  BadDims,
  BadDimension,
  DimensionCap,
  LatentDimCap,
  UnsupportedSubtrahend,
  UnsupportedOperandPair,
  ZeroDirection,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

/// Exception carrying a machine-readable kind alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace cvxset
