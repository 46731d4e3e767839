#include "cvxset/io/expression.hpp"

#include "cvxset/error.hpp"
#include "json_util.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <sstream>

namespace cvxset::io {

ExprError::ExprError(Kind kind, const std::string& what, int pos)
    : std::runtime_error(std::string(to_string(kind)) + (pos >= 0 ? " at " + std::to_string(pos) : "") + ": " +
                         what),
      kind_(kind),
      pos_(pos) {}

std::string_view to_string(ExprError::Kind k) {
  switch (k) {
    case ExprError::Kind::SyntaxError: return "SyntaxError";
    case ExprError::Kind::TypeError: return "TypeError";
    case ExprError::Kind::UnboundName: return "UnboundName";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Lexer and parser

namespace {

using Op = Expr::Op;

enum class Tok { Number, Ident, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  double value = 0.0;
  int pos = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  static const char* const kSymbols[] = {"**", "<=", ">=", "==", "@", "*", "+", "-", "<", ">", "(", ")", "[", "]", ","};
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char ch = s[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
      continue;
    }
    Token t;
    t.pos = static_cast<int>(i);
    if (std::isdigit(static_cast<unsigned char>(ch)) || (ch == '.' && i + 1 < s.size() && std::isdigit(s[i + 1]))) {
      const std::string rest(s.substr(i));
      char* end = nullptr;
      t.value = std::strtod(rest.c_str(), &end);
      const std::size_t len = static_cast<std::size_t>(end - rest.c_str());
      t.kind = Tok::Number;
      t.text = rest.substr(0, len);
      i += len;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(s.substr(i, j - i));
      i = j;
    } else {
      bool matched = false;
      for (const char* sym : kSymbols) {
        const std::string_view sv(sym);
        if (s.substr(i, sv.size()) == sv) {
          t.kind = Tok::Sym;
          t.text = std::string(sv);
          i += sv.size();
          matched = true;
          break;
        }
      }
      if (!matched) throw ExprError(ExprError::Kind::SyntaxError, std::string("unexpected character '") + ch + "'", t.pos);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = static_cast<int>(s.size());
  out.push_back(end);
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  ExprPtr parse() {
    ExprPtr e = comparison();
    if (peek().kind != Tok::End) syntax("unexpected '" + peek().text + "'");
    return e;
  }

 private:
  std::vector<Token> toks_;
  std::size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  [[noreturn]] void syntax(const std::string& what) const {
    throw ExprError(ExprError::Kind::SyntaxError, what, peek().pos);
  }
  void expect(const char* s) {
    if (!is_sym(s)) syntax(std::string("expected '") + s + "'");
    ++at_;
  }

  static ExprPtr binary(Op op, ExprPtr a, ExprPtr b, int pos) {
    auto e = std::make_shared<Expr>();
    e->op = op;
    e->pos = pos;
    e->args = {std::move(a), std::move(b)};
    return e;
  }

  ExprPtr comparison() {
    ExprPtr lhs = additive();
    while (true) {
      const Token& t = peek();
      Op op;
      if (t.kind == Tok::Sym && t.text == "<=") op = Op::Le;
      else if (t.kind == Tok::Sym && t.text == "<") op = Op::Lt;
      else if (t.kind == Tok::Sym && t.text == ">=") op = Op::Ge;
      else if (t.kind == Tok::Sym && t.text == ">") op = Op::Gt;
      else if (t.kind == Tok::Sym && t.text == "==") op = Op::Eq;
      else if (t.kind == Tok::Ident && t.text == "in") op = Op::In;
      else break;
      const int pos = t.pos;
      ++at_;
      lhs = binary(op, lhs, additive(), pos);
    }
    return lhs;
  }

  ExprPtr additive() {
    ExprPtr lhs = product();
    while (is_sym("+") || is_sym("-")) {
      const Op op = peek().text == "+" ? Op::Add : Op::Sub;
      const int pos = peek().pos;
      ++at_;
      lhs = binary(op, lhs, product(), pos);
    }
    return lhs;
  }

  ExprPtr product() {
    ExprPtr lhs = unary();
    while (is_sym("@") || is_sym("*")) {
      const int pos = peek().pos;
      ++at_;
      lhs = binary(Op::MatMul, lhs, unary(), pos);
    }
    return lhs;
  }

  ExprPtr unary() {
    if (is_sym("-")) {
      auto e = std::make_shared<Expr>();
      e->op = Op::Neg;
      e->pos = peek().pos;
      ++at_;
      e->args = {unary()};
      return e;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr lhs = primary();
    while (is_sym("**")) {
      const int pos = peek().pos;
      ++at_;
      lhs = binary(Op::Pow, lhs, primary(), pos);
    }
    return lhs;
  }

  double signed_number() {
    double sign = 1.0;
    if (is_sym("-")) {
      sign = -1.0;
      ++at_;
    }
    if (peek().kind != Tok::Number) syntax("expected a number");
    const double v = sign * peek().value;
    ++at_;
    return v;
  }

  ExprPtr primary() {
    const Token t = peek();
    auto e = std::make_shared<Expr>();
    e->pos = t.pos;
    if (t.kind == Tok::Number) {
      ++at_;
      e->op = Op::Number;
      e->number = t.value;
      return e;
    }
    if (t.kind == Tok::Ident && t.text != "in") {
      ++at_;
      e->name = t.text;
      if (!is_sym("(")) {
        e->op = Op::Name;
        return e;
      }
      ++at_;
      e->op = Op::Call;
      if (!is_sym(")")) {
        e->args.push_back(comparison());
        while (is_sym(",")) {
          ++at_;
          e->args.push_back(comparison());
        }
      }
      expect(")");
      return e;
    }
    if (is_sym("(")) {
      ++at_;
      ExprPtr inner = comparison();
      expect(")");
      return inner;
    }
    if (is_sym("[")) {
      ++at_;
      e->op = Op::VectorLit;
      if (!is_sym("]")) {
        e->elements.push_back(signed_number());
        while (is_sym(",")) {
          ++at_;
          e->elements.push_back(signed_number());
        }
      }
      expect("]");
      if (e->elements.empty()) syntax("empty vector literal");
      return e;
    }
    if (t.kind == Tok::End) syntax("unexpected end of expression");
    syntax("unexpected '" + t.text + "'");
  }
};

const char* symbol(Op op) {
  switch (op) {
    case Op::MatMul: return "@";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Pow: return "**";
    case Op::Le: return "<=";
    case Op::Lt: return "<";
    case Op::Ge: return ">=";
    case Op::Gt: return ">";
    case Op::Eq: return "==";
    case Op::In: return "in";
    default: return "?";
  }
}

std::string number_text(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

ExprPtr parse_expression(std::string_view text) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos)
    throw ExprError(ExprError::Kind::SyntaxError, "empty expression", 0);
  return Parser(tokenize(text)).parse();
}

std::string to_string(const Expr& e) {
  switch (e.op) {
    case Op::Number: return number_text(e.number);
    case Op::Name: return e.name;
    case Op::VectorLit: {
      std::string s = "[";
      for (std::size_t i = 0; i < e.elements.size(); ++i) s += (i ? ", " : "") + number_text(e.elements[i]);
      return s + "]";
    }
    case Op::Neg: return "(-" + to_string(*e.args[0]) + ")";
    case Op::Call: {
      std::string s = e.name + "(";
      for (std::size_t i = 0; i < e.args.size(); ++i) s += (i ? ", " : "") + to_string(*e.args[i]);
      return s + ")";
    }
    default:
      return "(" + to_string(*e.args[0]) + " " + symbol(e.op) + " " + to_string(*e.args[1]) + ")";
  }
}

// ---------------------------------------------------------------------------
// Types

namespace {

struct Type {
  enum class K { Set, Matrix, Vector, Scalar, Bool } k = K::Scalar;
  SetKind set = SetKind::Polytope;
  int rows = 0;  // set or vector dimension, matrix rows
  int cols = 0;  // matrix columns
};

std::string describe_type(const Type& t) {
  switch (t.k) {
    case Type::K::Set: return std::string(kind_name(t.set)) + "(" + std::to_string(t.rows) + ")";
    case Type::K::Matrix: return "matrix(" + std::to_string(t.rows) + "x" + std::to_string(t.cols) + ")";
    case Type::K::Vector: return "vector(" + std::to_string(t.rows) + ")";
    case Type::K::Scalar: return "scalar";
    case Type::K::Bool: return "bool";
  }
  return "?";
}

Type type_of(const Value& v) {
  Type t;
  if (const auto* s = std::get_if<AnySet>(&v)) {
    t.k = Type::K::Set;
    t.set = kind_of(*s);
    t.rows = dim(*s);
  } else if (const auto* m = std::get_if<MatrixXd>(&v)) {
    t.k = Type::K::Matrix;
    t.rows = static_cast<int>(m->rows());
    t.cols = static_cast<int>(m->cols());
  } else if (const auto* x = std::get_if<VectorXd>(&v)) {
    t.k = Type::K::Vector;
    t.rows = static_cast<int>(x->size());
  } else if (std::holds_alternative<double>(v)) {
    t.k = Type::K::Scalar;
  } else {
    t.k = Type::K::Bool;
  }
  return t;
}

[[noreturn]] void type_error(const Expr& e, const std::string& what, const Type& a) {
  throw ExprError(ExprError::Kind::TypeError, what + " not defined for " + describe_type(a), e.pos);
}
[[noreturn]] void type_error(const Expr& e, const std::string& what, const Type& a, const Type& b) {
  throw ExprError(ExprError::Kind::TypeError,
                  what + " not defined for " + describe_type(a) + " and " + describe_type(b), e.pos);
}

void same_dim(int a, int b, const Expr& e) {
  if (a != b)
    throw Error(ErrorKind::DimensionMismatch,
                "operands differ in dimension (" + std::to_string(a) + " vs " + std::to_string(b) + ") at " +
                    std::to_string(e.pos));
}

[[noreturn]] void unsupported(const std::string& what, SetKind a, SetKind b) {
  fail(ErrorKind::UnsupportedOperandPair,
       what + " of " + std::string(kind_name(a)) + " and " + std::string(kind_name(b)));
}

bool is_set(const Type& t) { return t.k == Type::K::Set; }

SetKind combined_kind(SetKind a, SetKind b) {
  return (a == SetKind::Polytope && b == SetKind::Polytope) ? SetKind::Polytope : SetKind::ConstrainedZonotope;
}

const Value& lookup(const Expr& e, const Environment& env) {
  auto it = env.find(e.name);
  if (it == env.end()) throw ExprError(ExprError::Kind::UnboundName, "'" + e.name + "' is not bound", e.pos);
  return it->second;
}

int power_exponent(const Expr& e, const Environment& env) {
  double p = 0;
  if (e.op == Op::Number) p = e.number;
  else if (e.op == Op::Name && std::holds_alternative<double>(lookup(e, env))) p = std::get<double>(lookup(e, env));
  else throw ExprError(ExprError::Kind::TypeError, "exponent must be a number", e.pos);
  if (p < 1 || p != std::floor(p)) throw ExprError(ExprError::Kind::TypeError, "exponent must be a positive integer", e.pos);
  return static_cast<int>(p);
}

Norm norm_arg(const Expr& e, const Environment& env) {
  if (e.op == Op::Name && e.name == "inf" && !env.count("inf")) return Norm::Linf;
  if (e.op == Op::Number && e.number == 1) return Norm::L1;
  if (e.op == Op::Number && e.number == 2) return Norm::L2;
  throw ExprError(ExprError::Kind::TypeError, "norm must be 1, 2 or inf", e.pos);
}

Type infer(const Expr& e, const Environment& env);

Type infer_call(const Expr& e, const Environment& env) {
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (e.args.size() < lo || e.args.size() > hi)
      throw ExprError(ExprError::Kind::TypeError, e.name + ": wrong number of arguments", e.pos);
  };
  if (e.name == "intersect") {
    arity(2, 3);
    const Type a = infer(*e.args[0], env);
    const Type b = infer(*e.args[1], env);
    if (!is_set(a) || !is_set(b)) type_error(e, "intersect", a, b);
    if (a.set == SetKind::Ellipsoid || b.set == SetKind::Ellipsoid) unsupported("intersection", a.set, b.set);
    if (e.args.size() == 3) {
      const Type r = infer(*e.args[2], env);
      if (r.k != Type::K::Matrix) type_error(e, "intersect map", r);
      same_dim(r.cols, a.rows, e);
      same_dim(r.rows, b.rows, e);
    } else {
      same_dim(a.rows, b.rows, e);
    }
    Type t = a;
    t.set = combined_kind(a.set, b.set);
    return t;
  }
  if (e.name == "support" || e.name == "project") {
    arity(2, e.name == "project" ? 3 : 2);
    const Type a = infer(*e.args[0], env);
    const Type v = infer(*e.args[1], env);
    if (!is_set(a) || v.k != Type::K::Vector) type_error(e, e.name, a, v);
    same_dim(a.rows, v.rows, e);
    if (e.args.size() == 3) norm_arg(*e.args[2], env);
    Type t;
    t.k = e.name == "support" ? Type::K::Scalar : Type::K::Vector;
    t.rows = a.rows;
    return t;
  }
  if (e.name == "volume") {
    arity(1, 1);
    const Type a = infer(*e.args[0], env);
    if (!is_set(a)) type_error(e, "volume", a);
    return Type{};
  }
  throw ExprError(ExprError::Kind::UnboundName, "unknown function '" + e.name + "'", e.pos);
}

Type infer(const Expr& e, const Environment& env) {
  using K = Type::K;
  switch (e.op) {
    case Op::Number: return Type{};
    case Op::VectorLit: {
      Type t;
      t.k = K::Vector;
      t.rows = static_cast<int>(e.elements.size());
      return t;
    }
    case Op::Name: return type_of(lookup(e, env));
    case Op::Call: return infer_call(e, env);
    case Op::Neg: {
      const Type a = infer(*e.args[0], env);
      if (a.k == K::Bool) type_error(e, "negation", a);
      return a;
    }
    default: break;
  }
  const Type a = infer(*e.args[0], env);
  if (e.op == Op::Pow) {
    if (a.k == K::Scalar) {
      if (infer(*e.args[1], env).k != K::Scalar) type_error(e, "**", a, infer(*e.args[1], env));
      return a;
    }
    if (!is_set(a)) type_error(e, "**", a);
    if (a.set == SetKind::Ellipsoid) unsupported("Cartesian power", a.set, a.set);
    Type t = a;
    t.rows = a.rows * power_exponent(*e.args[1], env);
    return t;
  }
  const Type b = infer(*e.args[1], env);
  switch (e.op) {
    case Op::MatMul: {
      if (a.k == K::Matrix && is_set(b)) {
        same_dim(a.cols, b.rows, e);
        Type t = b;
        t.rows = a.rows;
        return t;
      }
      if (is_set(a) && b.k == K::Matrix) {
        if (b.rows != b.cols) type_error(e, "inverse affine map with a non-square matrix", a, b);
        same_dim(b.rows, a.rows, e);
        return a;
      }
      if (a.k == K::Scalar && (is_set(b) || b.k != K::Bool)) return b;
      if (a.k == K::Matrix && b.k == K::Vector) {
        same_dim(a.cols, b.rows, e);
        Type t = b;
        t.rows = a.rows;
        return t;
      }
      if (a.k == K::Matrix && b.k == K::Matrix) {
        same_dim(a.cols, b.rows, e);
        Type t = a;
        t.cols = b.cols;
        return t;
      }
      type_error(e, "@", a, b);
    }
    case Op::Add:
    case Op::Sub: {
      const bool add = e.op == Op::Add;
      if (is_set(a) && is_set(b)) {
        same_dim(a.rows, b.rows, e);
        if (add) {
          if (a.set == SetKind::Ellipsoid || b.set == SetKind::Ellipsoid) unsupported("Minkowski sum", a.set, b.set);
          Type t = a;
          t.set = combined_kind(a.set, b.set);
          return t;
        }
        if (a.set == SetKind::Ellipsoid) unsupported("Pontryagin difference", a.set, b.set);
        if (a.set == SetKind::ConstrainedZonotope && b.set == SetKind::Polytope) {
          // Allowed when the polytope is a box; decided during evaluation.
        }
        return a;
      }
      if (is_set(a) && b.k == K::Vector) {
        same_dim(a.rows, b.rows, e);
        return a;
      }
      if (add && a.k == K::Vector && is_set(b)) {
        same_dim(a.rows, b.rows, e);
        return b;
      }
      if (a.k == b.k && (a.k == K::Vector || a.k == K::Scalar || a.k == K::Matrix)) {
        same_dim(a.rows, b.rows, e);
        same_dim(a.cols, b.cols, e);
        return a;
      }
      type_error(e, add ? "+" : "-", a, b);
    }
    case Op::Le:
    case Op::Lt:
    case Op::Ge:
    case Op::Gt:
    case Op::Eq:
    case Op::In: {
      Type t;
      t.k = K::Bool;
      if (e.op == Op::In && a.k == K::Vector && is_set(b)) {
        same_dim(a.rows, b.rows, e);
        return t;
      }
      if (is_set(a) && is_set(b)) {
        same_dim(a.rows, b.rows, e);
        return t;
      }
      if (e.op == Op::Eq && a.k == b.k && a.k != K::Set) return t;
      type_error(e, symbol(e.op), a, b);
    }
    default: break;
  }
  throw ExprError(ExprError::Kind::TypeError, "malformed expression", e.pos);
}

// ---------------------------------------------------------------------------
// Evaluation

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

AnySet affine(const AnySet& X, const MatrixXd& M) {
  return std::visit([&](const auto& x) -> AnySet { return x.affine_map(M); }, X);
}

AnySet preimage(const AnySet& X, const MatrixXd& M) {
  return std::visit([&](const auto& x) -> AnySet { return x.inverse_affine_map(M); }, X);
}

AnySet translate(const AnySet& X, const VectorXd& v) {
  return std::visit([&](const auto& x) -> AnySet { return x.translate(v); }, X);
}

AnySet minkowski(const AnySet& X, const AnySet& Y) {
  if (const auto* p = std::get_if<Polytope>(&X)) {
    if (const auto* q = std::get_if<Polytope>(&Y)) return minkowski_sum(*p, *q);
    return minkowski_sum(std::get<ConstrainedZonotope>(Y), *p);
  }
  const auto& z = std::get<ConstrainedZonotope>(X);
  if (const auto* q = std::get_if<Polytope>(&Y)) return minkowski_sum(z, *q);
  return minkowski_sum(z, std::get<ConstrainedZonotope>(Y));
}

AnySet pontryagin(const AnySet& X, const AnySet& Y) {
  if (const auto* p = std::get_if<Polytope>(&X))
    return std::visit([&](const auto& y) -> AnySet { return pontryagin_difference(*p, y); }, Y);
  const auto& z = std::get<ConstrainedZonotope>(X);
  if (const auto* e = std::get_if<Ellipsoid>(&Y)) return pontryagin_difference(z, *e);
  if (const auto* q = std::get_if<Polytope>(&Y)) {
    if (!is_box(*q)) unsupported("Pontryagin difference", SetKind::ConstrainedZonotope, SetKind::Polytope);
    const auto [lo, hi] = q->bounding_box();
    return pontryagin_difference(z, ConstrainedZonotope::rect(lo, hi, q->tolerance()));
  }
  return pontryagin_difference(z, std::get<ConstrainedZonotope>(Y));
}

AnySet intersection(const AnySet& X, const AnySet& Y, const MatrixXd& R) {
  if (const auto* p = std::get_if<Polytope>(&X)) {
    if (const auto* q = std::get_if<Polytope>(&Y)) {
      if (R.size()) return p->intersect_inverse_affine(*q, R);
      return intersect(*p, *q);
    }
    return intersect(ConstrainedZonotope::from_polytope(*p), std::get<ConstrainedZonotope>(Y), R);
  }
  const auto& z = std::get<ConstrainedZonotope>(X);
  if (const auto* q = std::get_if<Polytope>(&Y)) return intersect(z, *q, R);
  return intersect(z, std::get<ConstrainedZonotope>(Y), R);
}

AnySet cartesian(const AnySet& X, int m) {
  if (const auto* p = std::get_if<Polytope>(&X)) return p->cartesian_power(m);
  return std::get<ConstrainedZonotope>(X).cartesian_power(m);
}

double volume_of(const AnySet& X) {
  if (const auto* p = std::get_if<Polytope>(&X)) return p->volume();
  if (const auto* z = std::get_if<ConstrainedZonotope>(&X)) return z->volume_2d();
  return std::get<Ellipsoid>(X).volume();
}

VectorXd project_point(const AnySet& X, const VectorXd& v, Norm p) {
  if (const auto* e = std::get_if<Ellipsoid>(&X)) {
    if (p != Norm::L2) fail(ErrorKind::InvalidArgument, "ellipsoid projection uses the 2-norm");
    return e->project(v).point;
  }
  return std::visit(
      [&](const auto& x) -> VectorXd {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, Ellipsoid>) return x.project(v).point;
        else return x.project(v, p).point;
      },
      X);
}

Value eval(const Expr& e, const Environment& env) {
  switch (e.op) {
    case Op::Number: return e.number;
    case Op::VectorLit: return VectorXd(Eigen::Map<const VectorXd>(e.elements.data(), e.elements.size()));
    case Op::Name: return lookup(e, env);
    case Op::Neg: {
      const Value a = eval(*e.args[0], env);
      if (const auto* s = std::get_if<AnySet>(&a)) return affine(*s, -MatrixXd::Identity(dim(*s), dim(*s)));
      if (const auto* m = std::get_if<MatrixXd>(&a)) return MatrixXd(-*m);
      if (const auto* v = std::get_if<VectorXd>(&a)) return VectorXd(-*v);
      return -std::get<double>(a);
    }
    case Op::Call: {
      if (e.name == "intersect") {
        const Value a = eval(*e.args[0], env);
        const Value b = eval(*e.args[1], env);
        const MatrixXd R = e.args.size() == 3 ? std::get<MatrixXd>(eval(*e.args[2], env)) : MatrixXd();
        return intersection(std::get<AnySet>(a), std::get<AnySet>(b), R);
      }
      if (e.name == "support") {
        const Value a = eval(*e.args[0], env);
        return support(std::get<AnySet>(a), std::get<VectorXd>(eval(*e.args[1], env))).value;
      }
      if (e.name == "project") {
        const Norm p = e.args.size() == 3 ? norm_arg(*e.args[2], env) : Norm::L2;
        const Value a = eval(*e.args[0], env);
        return project_point(std::get<AnySet>(a), std::get<VectorXd>(eval(*e.args[1], env)), p);
      }
      return volume_of(std::get<AnySet>(eval(*e.args[0], env)));
    }
    default: break;
  }
  const Value a = eval(*e.args[0], env);
  if (e.op == Op::Pow) {
    if (const auto* x = std::get_if<double>(&a)) return std::pow(*x, std::get<double>(eval(*e.args[1], env)));
    return cartesian(std::get<AnySet>(a), power_exponent(*e.args[1], env));
  }
  const Value b = eval(*e.args[1], env);
  const auto* sa = std::get_if<AnySet>(&a);
  const auto* sb = std::get_if<AnySet>(&b);
  switch (e.op) {
    case Op::MatMul: {
      if (const auto* m = std::get_if<MatrixXd>(&a)) {
        if (sb) return affine(*sb, *m);
        if (const auto* v = std::get_if<VectorXd>(&b)) return VectorXd(*m * *v);
        return MatrixXd(*m * std::get<MatrixXd>(b));
      }
      if (sa) return preimage(*sa, std::get<MatrixXd>(b));
      const double s = std::get<double>(a);
      if (sb) return affine(*sb, s * MatrixXd::Identity(dim(*sb), dim(*sb)));
      if (const auto* m = std::get_if<MatrixXd>(&b)) return MatrixXd(s * *m);
      if (const auto* v = std::get_if<VectorXd>(&b)) return VectorXd(s * *v);
      return s * std::get<double>(b);
    }
    case Op::Add:
      if (sa && sb) return minkowski(*sa, *sb);
      if (sa) return translate(*sa, std::get<VectorXd>(b));
      if (sb) return translate(*sb, std::get<VectorXd>(a));
      if (const auto* v = std::get_if<VectorXd>(&a)) return VectorXd(*v + std::get<VectorXd>(b));
      if (const auto* m = std::get_if<MatrixXd>(&a)) return MatrixXd(*m + std::get<MatrixXd>(b));
      return std::get<double>(a) + std::get<double>(b);
    case Op::Sub:
      if (sa && sb) return pontryagin(*sa, *sb);
      if (sa) return translate(*sa, -std::get<VectorXd>(b));
      if (const auto* v = std::get_if<VectorXd>(&a)) return VectorXd(*v - std::get<VectorXd>(b));
      if (const auto* m = std::get_if<MatrixXd>(&a)) return MatrixXd(*m - std::get<MatrixXd>(b));
      return std::get<double>(a) - std::get<double>(b);
    case Op::Le:
    case Op::Lt: return contains_set(*sb, *sa);
    case Op::Ge:
    case Op::Gt: return contains_set(*sa, *sb);
    case Op::In:
      if (const auto* v = std::get_if<VectorXd>(&a)) return contains(*sb, *v);
      return contains_set(*sb, *sa);
    case Op::Eq:
      if (sa) return set_equal(*sa, *sb);
      if (const auto* v = std::get_if<VectorXd>(&a)) return *v == std::get<VectorXd>(b);
      if (const auto* m = std::get_if<MatrixXd>(&a)) return *m == std::get<MatrixXd>(b);
      if (const auto* x = std::get_if<double>(&a)) return *x == std::get<double>(b);
      return std::get<bool>(a) == std::get<bool>(b);
    default: break;
  }
  throw ExprError(ExprError::Kind::TypeError, "malformed expression", e.pos);
}

}  // namespace

std::string_view value_kind(const Value& v) {
  switch (v.index()) {
    case 0: return kind_name(kind_of(std::get<AnySet>(v)));
    case 1: return "matrix";
    case 2: return "vector";
    case 3: return "scalar";
    default: return "bool";
  }
}

void check_expression(const Expr& e, const Environment& env) { infer(e, env); }

Value eval_expression(const Expr& e, const Environment& env) {
  infer(e, env);
  return eval(e, env);
}

Value eval_expression(std::string_view text, const Environment& env) {
  return eval_expression(*parse_expression(text), env);
}

Environment parse_environment(std::string_view json_text, const Tolerance& tol) {
  using detail::json;
  const json j = detail::parse_json(json_text);
  if (!j.is_object()) throw FormatError("environment must be a JSON object");
  Environment env;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const json& v = it.value();
    if (v.is_object()) env.emplace(it.key(), detail::set_from_json(v, tol));
    else if (v.is_boolean()) env.emplace(it.key(), v.get<bool>());
    else if (v.is_number()) env.emplace(it.key(), detail::to_number(v, it.key()));
    else if (v.is_array() && !v.empty() && v[0].is_array()) env.emplace(it.key(), detail::to_matrix(v, it.key()));
    else if (v.is_array()) env.emplace(it.key(), detail::to_vector(v, it.key()));
    else throw FormatError("unsupported environment entry '" + it.key() + "'");
  }
  return env;
}

std::string emit_value(const Value& v) {
  using detail::json;
  json j;
  if (const auto* s = std::get_if<AnySet>(&v)) j = detail::set_to_json(*s);
  else if (const auto* m = std::get_if<MatrixXd>(&v)) j = detail::to_json(*m);
  else if (const auto* x = std::get_if<VectorXd>(&v)) j = detail::to_json(*x);
  else if (const auto* d = std::get_if<double>(&v)) j = *d;
  else j = std::get<bool>(v);
  return detail::pretty(j);
}

}  // namespace cvxset::io
