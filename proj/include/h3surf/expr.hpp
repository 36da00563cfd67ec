#pragma once

// Small expression language for surface data such as a(t), u(t) and f(x, y).
//
//   expr   := term (("+" | "-") term)*
//   term   := factor (("*" | "/") factor)*
//   factor := unary
//   unary  := "-" unary | power
//   power  := atom ("^" unary)?
//   atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
//
// Variables: t, s, x, y, c. Functions: sqrt sin cos tan exp log atan abs.
// "^" binds tighter than unary minus (-t^2 is -(t^2)) and is right associative.

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "h3surf/jet.hpp"

namespace h3surf {

enum class Var { T, S, X, Y, C };
enum class Func { Sqrt, Sin, Cos, Tan, Exp, Log, Atan, Abs };
enum class BinOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;

/// Immutable, shareable expression tree.
class Expr {
 public:
  Expr() = default;

  static Expr number(double v);
  static Expr variable(Var v);
  static Expr call(Func f, Expr arg);
  static Expr negate(Expr arg);
  static Expr binary(BinOp op, Expr lhs, Expr rhs);

  bool valid() const { return node_ != nullptr; }
  const ExprNode& node() const { return *node_; }

  /// Canonical text; parse(to_string()) reproduces the same tree.
  std::string to_string() const;
  bool uses(Var v) const;

  friend bool operator==(const Expr& l, const Expr& r);

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const ExprNode> node_;
};

struct ExprNode {
  enum class Kind { Number, Variable, Call, Negate, Binary };
  Kind kind = Kind::Number;
  double number = 0.0;
  Var var = Var::T;
  Func func = Func::Sqrt;
  BinOp op = BinOp::Add;
  Expr lhs;  // operand for Call and Negate
  Expr rhs;
};

/// Throws ParseError on bad syntax or an unknown identifier.
Expr parse(std::string_view src);

using Bindings = std::map<Var, Jet2>;

/// Exact value, gradient and Hessian by jet arithmetic. Throws DomainError
/// naming the offending subexpression, or InvalidArgument for unbound variables.
Jet2 eval_jet2(const Expr& e, const Bindings& bindings);

/// Plain value; no derivatives are carried.
double eval(const Expr& e, const Bindings& bindings);

/// Value, first and second derivative of a univariate expression in t.
struct Jet1 {
  double value;
  double d1;
  double d2;
};
Jet1 eval_univariate(const Expr& e, double t, const Bindings& extra = {});

const char* var_name(Var v);
const char* func_name(Func f);

}  // namespace h3surf
