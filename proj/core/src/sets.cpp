#include "cvxset/sets.hpp"

#include "cvxset/error.hpp"

namespace cvxset {

SetKind kind_of(const AnySet& s) { return static_cast<SetKind>(s.index()); }

std::string_view kind_name(SetKind k) {
  switch (k) {
    case SetKind::Polytope: return "polytope";
    case SetKind::ConstrainedZonotope: return "czonotope";
    case SetKind::Ellipsoid: return "ellipsoid";
  }
  return "?";
}

int dim(const AnySet& s) {
  return std::visit([](const auto& x) { return x.dim(); }, s);
}

bool is_empty(const AnySet& s) {
  return std::visit([](const auto& x) { return x.is_empty(); }, s);
}

SupportResult support(const AnySet& s, const VectorXd& v) {
  return std::visit([&](const auto& x) { return x.support(v); }, s);
}

bool contains(const AnySet& s, const VectorXd& p) {
  return std::visit([&](const auto& x) { return x.contains(p); }, s);
}

std::string describe(const AnySet& s) {
  return std::visit([](const auto& x) { return x.describe(); }, s);
}

const Tolerance& tolerance(const AnySet& s) {
  return std::visit([](const auto& x) -> const Tolerance& { return x.tolerance(); }, s);
}

Polytope as_polytope(const AnySet& s) {
  if (const auto* p = std::get_if<Polytope>(&s)) return *p;
  if (const auto* z = std::get_if<ConstrainedZonotope>(&s))
    return z->is_empty() ? Polytope::empty(z->dim(), z->tolerance()) : z->to_polytope();
  fail(ErrorKind::InvalidArgument, "an ellipsoid has no exact polytope form");
}

ConstrainedZonotope as_czonotope(const AnySet& s) {
  if (const auto* z = std::get_if<ConstrainedZonotope>(&s)) return *z;
  if (const auto* p = std::get_if<Polytope>(&s))
    return p->is_empty() ? ConstrainedZonotope::empty(p->dim(), p->tolerance()) : ConstrainedZonotope::from_polytope(*p);
  fail(ErrorKind::InvalidArgument, "an ellipsoid has no exact constrained zonotope form");
}

bool contains_set(const AnySet& X, const AnySet& Y) {
  require(dim(X) == dim(Y), ErrorKind::DimensionMismatch, "containment operands differ in dimension");
  return std::visit(
      [](const auto& x, const auto& y) -> bool {
        using XT = std::decay_t<decltype(x)>;
        using YT = std::decay_t<decltype(y)>;
        if constexpr (std::is_same_v<XT, ConstrainedZonotope> && std::is_same_v<YT, Ellipsoid>) {
          fail(ErrorKind::UnsupportedOperandPair, "constrained zonotope containing an ellipsoid");
        } else if constexpr (std::is_same_v<XT, Ellipsoid> && std::is_same_v<YT, ConstrainedZonotope>) {
          return y.is_empty() || contains_set(x, y.to_polytope());
        } else {
          return contains_set(x, y);
        }
      },
      X, Y);
}

bool set_equal(const AnySet& X, const AnySet& Y) {
  if (dim(X) != dim(Y)) return false;
  return contains_set(X, Y) && contains_set(Y, X);
}

}  // namespace cvxset
