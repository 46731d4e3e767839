#pragma once

#include "cvxset/czonotope.hpp"
#include "cvxset/ellipsoid.hpp"
#include "cvxset/polytope.hpp"

#include <string>
#include <string_view>
#include <variant>

namespace cvxset {

/// Any of the three set classes.
using AnySet = std::variant<Polytope, ConstrainedZonotope, Ellipsoid>;

enum class SetKind { Polytope, ConstrainedZonotope, Ellipsoid };

SetKind kind_of(const AnySet& s);
std::string_view kind_name(SetKind k);

int dim(const AnySet& s);
bool is_empty(const AnySet& s);
SupportResult support(const AnySet& s, const VectorXd& v);
bool contains(const AnySet& s, const VectorXd& x);
std::string describe(const AnySet& s);
const Tolerance& tolerance(const AnySet& s);

/// Exact polytope form of a polytope or constrained zonotope; InvalidArgument for an
/// ellipsoid.
Polytope as_polytope(const AnySet& s);
/// Exact constrained-zonotope form of a polytope or constrained zonotope;
/// InvalidArgument for an ellipsoid.
ConstrainedZonotope as_czonotope(const AnySet& s);

/// Y subset of X for every supported pair.
bool contains_set(const AnySet& X, const AnySet& Y);
/// Mutual containment.
bool set_equal(const AnySet& X, const AnySet& Y);

}  // namespace cvxset
