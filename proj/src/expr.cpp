#include "h3surf/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <system_error>

#include "h3surf/error.hpp"

namespace h3surf {

namespace {

std::shared_ptr<ExprNode> make_node(ExprNode::Kind k) {
  auto n = std::make_shared<ExprNode>();
  n->kind = k;
  return n;
}

struct VarEntry {
  const char* name;
  Var var;
};
constexpr VarEntry kVars[] = {
    {"t", Var::T}, {"s", Var::S}, {"x", Var::X}, {"y", Var::Y}, {"c", Var::C}};

struct FuncEntry {
  const char* name;
  Func func;
};
constexpr FuncEntry kFuncs[] = {{"sqrt", Func::Sqrt}, {"sin", Func::Sin}, {"cos", Func::Cos},
                                {"tan", Func::Tan},   {"exp", Func::Exp}, {"log", Func::Log},
                                {"atan", Func::Atan}, {"abs", Func::Abs}};

std::string format_number(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Precedence of the grammar level a node belongs to.
int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::Binary:
      switch (n.op) {
        case BinOp::Add:
        case BinOp::Sub:
          return 1;
        case BinOp::Mul:
        case BinOp::Div:
          return 2;
        case BinOp::Pow:
          return 4;
      }
      return 1;
    case ExprNode::Kind::Negate:
      return 3;
    default:
      return 5;
  }
}

void print(const Expr& e, std::string& out);

void print_at(const Expr& e, int min_prec, std::string& out) {
  if (precedence(e.node()) < min_prec) {
    out += '(';
    print(e, out);
    out += ')';
  } else {
    print(e, out);
  }
}

void print(const Expr& e, std::string& out) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::Number:
      out += format_number(n.number);
      return;
    case ExprNode::Kind::Variable:
      out += var_name(n.var);
      return;
    case ExprNode::Kind::Call:
      out += func_name(n.func);
      out += '(';
      print(n.lhs, out);
      out += ')';
      return;
    case ExprNode::Kind::Negate:
      out += '-';
      print_at(n.lhs, 3, out);
      return;
    case ExprNode::Kind::Binary:
      break;
  }
  switch (n.op) {
    case BinOp::Add:
    case BinOp::Sub:
      print_at(n.lhs, 1, out);
      out += n.op == BinOp::Add ? " + " : " - ";
      print_at(n.rhs, 2, out);
      return;
    case BinOp::Mul:
    case BinOp::Div:
      print_at(n.lhs, 2, out);
      out += n.op == BinOp::Mul ? '*' : '/';
      print_at(n.rhs, 3, out);
      return;
    case BinOp::Pow:
      print_at(n.lhs, 5, out);
      out += '^';
      print_at(n.rhs, 3, out);
      return;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Expr run() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("empty expression", pos_);
    Expr e = parse_expr();
    skip_ws();
    if (pos_ < src_.size()) {
      throw ParseError(std::string("unexpected '") + src_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Expr parse_expr() {
    Expr lhs = parse_term();
    for (;;) {
      if (accept('+')) {
        lhs = Expr::binary(BinOp::Add, lhs, parse_term());
      } else if (accept('-')) {
        lhs = Expr::binary(BinOp::Sub, lhs, parse_term());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_term() {
    Expr lhs = parse_unary();
    for (;;) {
      if (accept('*')) {
        lhs = Expr::binary(BinOp::Mul, lhs, parse_unary());
      } else if (accept('/')) {
        lhs = Expr::binary(BinOp::Div, lhs, parse_unary());
      } else {
        return lhs;
      }
    }
  }

  Expr parse_unary() {
    if (accept('-')) return Expr::negate(parse_unary());
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (accept('^')) return Expr::binary(BinOp::Pow, base, parse_unary());
    return base;
  }

  Expr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw ParseError("unexpected end of input", pos_);
    const char ch = src_[pos_];
    if (ch == '(') {
      ++pos_;
      Expr inner = parse_expr();
      if (!accept(')')) throw ParseError("expected ')'", pos_);
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(ch))) return parse_ident();
    throw ParseError(std::string("unexpected '") + ch + "'", pos_);
  }

  Expr parse_number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
        ++pos_;
        ++n;
      }
      return n;
    };
    std::size_t n = digits();
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      n += digits();
    }
    if (n == 0) throw ParseError("malformed number", start);
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      const std::size_t save = pos_;
      ++pos_;
      if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;  // "2e" is the number 2 followed by garbage
    }
    double value = 0.0;
    const char* first = src_.data() + start;
    const char* last = src_.data() + pos_;
    auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value)) {
      throw ParseError("malformed number", start);
    }
    return Expr::number(value);
  }

  Expr parse_ident() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    const std::string_view name = src_.substr(start, pos_ - start);
    for (const auto& f : kFuncs) {
      if (name == f.name) {
        if (!accept('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
        Expr arg = parse_expr();
        if (!accept(')')) throw ParseError("expected ')'", pos_);
        return Expr::call(f.func, arg);
      }
    }
    for (const auto& v : kVars) {
      if (name == v.name) return Expr::variable(v.var);
    }
    throw ParseError("unknown identifier '" + std::string(name) + "'", start);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

[[noreturn]] void domain_fail(const Expr& e, const std::string& what) {
  throw DomainError(what + " in '" + e.to_string() + "'");
}

Jet2 checked(const Expr& e, const Jet2& j) {
  if (!j.all_finite()) domain_fail(e, "non-finite result");
  return j;
}

bool integer_valued(double v) {
  return std::isfinite(v) && std::abs(v) < 1e9 && v == std::floor(v);
}

Jet2 eval_node(const Expr& e, const Bindings& b) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::Number:
      return Jet2::constant(n.number);
    case ExprNode::Kind::Variable: {
      auto it = b.find(n.var);
      if (it == b.end()) {
        throw InvalidArgument(std::string("unbound variable '") + var_name(n.var) + "'");
      }
      return it->second;
    }
    case ExprNode::Kind::Negate:
      return -eval_node(n.lhs, b);
    case ExprNode::Kind::Call: {
      const Jet2 a = eval_node(n.lhs, b);
      switch (n.func) {
        case Func::Sqrt:
          if (!(a.value > 0.0)) domain_fail(e, "sqrt of non-positive value");
          return checked(e, sqrt(a));
        case Func::Log:
          if (!(a.value > 0.0)) domain_fail(e, "log of non-positive value");
          return checked(e, log(a));
        case Func::Sin:
          return checked(e, sin(a));
        case Func::Cos:
          return checked(e, cos(a));
        case Func::Tan:
          return checked(e, tan(a));
        case Func::Exp:
          return checked(e, exp(a));
        case Func::Atan:
          return checked(e, atan(a));
        case Func::Abs:
          return checked(e, abs(a));
      }
      break;
    }
    case ExprNode::Kind::Binary: {
      const Jet2 l = eval_node(n.lhs, b);
      const Jet2 r = eval_node(n.rhs, b);
      switch (n.op) {
        case BinOp::Add:
          return checked(e, l + r);
        case BinOp::Sub:
          return checked(e, l - r);
        case BinOp::Mul:
          return checked(e, l * r);
        case BinOp::Div:
          if (r.value == 0.0) domain_fail(e, "division by zero");
          return checked(e, l / r);
        case BinOp::Pow:
          if (r.is_constant() && integer_valued(r.value)) {
            if (r.value < 0.0 && l.value == 0.0) domain_fail(e, "division by zero");
            return checked(e, pow_int(l, static_cast<long>(r.value)));
          }
          if (!(l.value > 0.0)) domain_fail(e, "non-integer power of non-positive base");
          return checked(e, pow(l, r));
      }
      break;
    }
  }
  throw NumericalError("eval_jet2: corrupt expression node");
}

bool uses_var(const Expr& e, Var v) {
  const ExprNode& n = e.node();
  switch (n.kind) {
    case ExprNode::Kind::Variable:
      return n.var == v;
    case ExprNode::Kind::Number:
      return false;
    case ExprNode::Kind::Call:
    case ExprNode::Kind::Negate:
      return uses_var(n.lhs, v);
    case ExprNode::Kind::Binary:
      return uses_var(n.lhs, v) || uses_var(n.rhs, v);
  }
  return false;
}

}  // namespace

Expr Expr::number(double v) {
  if (std::signbit(v) && v != 0.0) return negate(number(-v));
  auto n = make_node(ExprNode::Kind::Number);
  n->number = v == 0.0 ? 0.0 : v;
  return Expr(std::move(n));
}

Expr Expr::variable(Var v) {
  auto n = make_node(ExprNode::Kind::Variable);
  n->var = v;
  return Expr(std::move(n));
}

Expr Expr::call(Func f, Expr arg) {
  auto n = make_node(ExprNode::Kind::Call);
  n->func = f;
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::negate(Expr arg) {
  auto n = make_node(ExprNode::Kind::Negate);
  n->lhs = std::move(arg);
  return Expr(std::move(n));
}

Expr Expr::binary(BinOp op, Expr lhs, Expr rhs) {
  auto n = make_node(ExprNode::Kind::Binary);
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Expr(std::move(n));
}

std::string Expr::to_string() const {
  std::string out;
  if (valid()) print(*this, out);
  return out;
}

bool Expr::uses(Var v) const { return valid() && uses_var(*this, v); }

bool operator==(const Expr& l, const Expr& r) {
  if (l.node_ == r.node_) return true;
  if (!l.valid() || !r.valid()) return false;
  const ExprNode& a = l.node();
  const ExprNode& b = r.node();
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ExprNode::Kind::Number:
      return a.number == b.number;
    case ExprNode::Kind::Variable:
      return a.var == b.var;
    case ExprNode::Kind::Call:
      return a.func == b.func && a.lhs == b.lhs;
    case ExprNode::Kind::Negate:
      return a.lhs == b.lhs;
    case ExprNode::Kind::Binary:
      return a.op == b.op && a.lhs == b.lhs && a.rhs == b.rhs;
  }
  return false;
}

Expr parse(std::string_view src) { return Parser(src).run(); }

Jet2 eval_jet2(const Expr& e, const Bindings& bindings) {
  if (!e.valid()) throw InvalidArgument("eval_jet2: empty expression");
  return eval_node(e, bindings);
}

double eval(const Expr& e, const Bindings& bindings) { return eval_jet2(e, bindings).value; }

Jet1 eval_univariate(const Expr& e, double t, const Bindings& extra) {
  Bindings b = extra;
  b[Var::T] = Jet2::variable(t, 0);
  const Jet2 j = eval_jet2(e, b);
  return {j.value, j.grad[0], j.hess[0]};
}

const char* var_name(Var v) {
  for (const auto& e : kVars) {
    if (e.var == v) return e.name;
  }
  return "?";
}

const char* func_name(Func f) {
  for (const auto& e : kFuncs) {
    if (e.func == f) return e.name;
  }
  return "?";
}

}  // namespace h3surf
