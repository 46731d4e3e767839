#pragma once

#include "cvxset/sets.hpp"

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace cvxset::io {

/// Parse and evaluation failures of the expression language.
class ExprError : public std::runtime_error {
 public:
  enum class Kind { SyntaxError, TypeError, UnboundName };
  ExprError(Kind kind, const std::string& what, int pos = -1);
  Kind kind() const noexcept { return kind_; }
  /// Character offset into the source text, -1 when unknown.
  int position() const noexcept { return pos_; }

 private:
  Kind kind_;
  int pos_;
};

std::string_view to_string(ExprError::Kind k);

/// Parse tree node.
struct Expr {
  enum class Op {
    Number,
    Name,
    VectorLit,
    Neg,
    MatMul,  // `@` or `*`
    Add,
    Sub,
    Pow,
    Le,
    Lt,
    Ge,
    Gt,
    Eq,
    In,
    Call,
  };
  Op op = Op::Number;
  double number = 0.0;
  std::string name;  // Name and Call
  std::vector<double> elements;
  std::vector<std::shared_ptr<const Expr>> args;
  int pos = 0;
};

using ExprPtr = std::shared_ptr<const Expr>;

/// Grammar, loosest binding first:
///
///     comparison := additive (("<=" | "<" | ">=" | ">" | "==" | "in") additive)*
///     additive   := product (("+" | "-") product)*
///     product    := unary (("@" | "*") unary)*
///     unary      := "-" unary | power
///     power      := primary ("**" primary)*
///     primary    := number | name | name "(" args ")" | "(" comparison ")" | "[" numbers "]"
///
/// Binary operators associate to the left within a tier. Calls: intersect(X, Y),
/// support(X, v), project(X, v, p) with p in {1, 2, inf}, volume(X).
ExprPtr parse_expression(std::string_view text);

/// Fully parenthesized rendering, e.g. "((M @ X) + Y)".
std::string to_string(const Expr& e);

/// Values of the language.
using Value = std::variant<AnySet, MatrixXd, VectorXd, double, bool>;

std::string_view value_kind(const Value& v);

/// Named values bound for evaluation. Loaded from a JSON object whose members are set
/// documents, 2-D arrays (matrices), 1-D arrays (vectors) or numbers.
using Environment = std::map<std::string, Value, std::less<>>;

Environment parse_environment(std::string_view json_text, const Tolerance& tol = {});

/// Static check of operand kinds and dimensions without evaluating set operations.
void check_expression(const Expr& e, const Environment& env);

/// check_expression followed by evaluation. A vector right operand of + or -
/// translates; `v in X` tests a point; `X in Y`, `X <= Y` test X subset of Y; `==` is
/// mutual containment; `M @ X` maps X forward; `X @ M` is the preimage {x : M x in X}.
Value eval_expression(const Expr& e, const Environment& env);
Value eval_expression(std::string_view text, const Environment& env);

/// JSON rendering of a value: set documents for sets, arrays or literals otherwise.
std::string emit_value(const Value& v);

}  // namespace cvxset::io
