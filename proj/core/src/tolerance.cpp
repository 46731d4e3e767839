#include "cvxset/tolerance.hpp"

#include "cvxset/error.hpp"

namespace cvxset {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::EmptyInterior: return "EmptyInterior";
    case ErrorKind::UnboundedPolytope: return "UnboundedPolytope";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotPsd: return "NotPsd";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::Infeasible: return "Infeasible";
    case ErrorKind::Unbounded: return "Unbounded";
    case ErrorKind::IterationLimit: return "IterationLimit";
    case ErrorKind::BadDims: return "BadDims";
    case ErrorKind::BadDimension: return "BadDimension";
    case ErrorKind::DimensionCap: return "DimensionCap";
    case ErrorKind::LatentDimCap: return "LatentDimCap";
    case ErrorKind::UnsupportedSubtrahend: return "UnsupportedSubtrahend";
    case ErrorKind::UnsupportedOperandPair: return "UnsupportedOperandPair";
    case ErrorKind::ZeroDirection: return "ZeroDirection";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

void Tolerance::validate() const {
  require(feas > 0 && rank > 0 && opt > 0 && iter_max >= 1, ErrorKind::InvalidArgument,
          "tolerances must be strictly positive and iter_max >= 1");
}

}  // namespace cvxset
