#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <random>
#include <string>

#include "h3surf/error.hpp"
#include "h3surf/expr.hpp"
#include "h3surf/jet.hpp"

using namespace h3surf;

namespace {

Bindings xy(double x, double y) {
  return {{Var::X, Jet2::variable(x, 0)}, {Var::Y, Jet2::variable(y, 1)}};
}

double value_at(const Expr& e, double x, double y) {
  return eval(e, {{Var::X, Jet2::constant(x)}, {Var::Y, Jet2::constant(y)}});
}

struct Fd {
  double fx, fy, fxx, fxy, fyy;
};

Fd finite_differences(const Expr& e, double x, double y, double h) {
  const auto f = [&](double a, double b) { return value_at(e, a, b); };
  return {(f(x + h, y) - f(x - h, y)) / (2 * h), (f(x, y + h) - f(x, y - h)) / (2 * h),
          (f(x + h, y) - 2 * f(x, y) + f(x - h, y)) / (h * h),
          (f(x + h, y + h) - f(x + h, y - h) - f(x - h, y + h) + f(x - h, y - h)) / (4 * h * h),
          (f(x, y + h) - 2 * f(x, y) + f(x, y - h)) / (h * h)};
}

// Random expression in x, y whose subexpressions stay in every domain on
// [-1, 1]^2 (sqrt and log only see 1 + e^2, division only by 2 + sin).
std::string random_expr(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 9 : 2);
  switch (pick(rng)) {
    case 0:
      return "x";
    case 1:
      return "y";
    case 2: {
      std::uniform_real_distribution<double> c(-2, 2);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", c(rng));
      return std::string("(") + buf + ")";
    }
    case 3:
      return "(" + random_expr(rng, depth - 1) + " + " + random_expr(rng, depth - 1) + ")";
    case 4:
      return "(" + random_expr(rng, depth - 1) + " - " + random_expr(rng, depth - 1) + ")";
    case 5:
      return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
    case 6:
      return "(" + random_expr(rng, depth - 1) + "/(2 + sin(" + random_expr(rng, depth - 1) + ")))";
    case 7:
      return "sqrt(1 + (" + random_expr(rng, depth - 1) + ")^2)";
    case 8:
      return "log(1 + (" + random_expr(rng, depth - 1) + ")^2)";
    default: {
      const char* f[] = {"sin", "cos", "atan", "exp"};
      std::uniform_int_distribution<int> k(0, 3);
      return std::string(f[k(rng)]) + "(" + random_expr(rng, depth - 1) + "/3)";
    }
  }
}

}  // namespace

TEST(Parse, PrecedenceAndAssociativity) {
  EXPECT_DOUBLE_EQ(value_at(parse("1 + 2*3"), 0, 0), 7.0);
  EXPECT_DOUBLE_EQ(value_at(parse("2^3^2"), 0, 0), 512.0);
  EXPECT_DOUBLE_EQ(value_at(parse("-x^2"), 3, 0), -9.0);
  EXPECT_DOUBLE_EQ(value_at(parse("(-x)^2"), 3, 0), 9.0);
  EXPECT_DOUBLE_EQ(value_at(parse("2^-1"), 0, 0), 0.5);
  EXPECT_DOUBLE_EQ(value_at(parse("8/4/2"), 0, 0), 1.0);
  EXPECT_DOUBLE_EQ(value_at(parse("1 - 2 - 3"), 0, 0), -4.0);
  EXPECT_DOUBLE_EQ(value_at(parse("1.5e2"), 0, 0), 150.0);
}

TEST(Parse, ErrorsCarryPositions) {
  try {
    parse("x + * y");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 4u);
  }
  try {
    parse("sin(x) + foo");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 9u);
    EXPECT_NE(std::string(e.what()).find("foo"), std::string::npos);
  }
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("(x"), ParseError);
  EXPECT_THROW(parse("x)"), ParseError);
  EXPECT_THROW(parse("sqrt x"), ParseError);
}

TEST(Print, CanonicalRoundTrip) {
  const char* cases[] = {"sqrt(c - t^2)", "x*y/2",        "-t^2",      "(-t)^2",
                         "t^2^3",         "(t^2)^3",      "t - (s - 1)",
                         "2^-t",          "-(x + y)*3",   "x/(y*2)",   "atan(t) - t*-2",
                         "1e+20*x",       "exp(-x^2/2)"};
  for (const char* src : cases) {
    const Expr e = parse(src);
    const Expr again = parse(e.to_string());
    EXPECT_TRUE(e == again) << src << " -> " << e.to_string();
    EXPECT_EQ(e.to_string(), again.to_string());
  }
  EXPECT_EQ(parse("x*y/2").to_string(), "x*y/2");
  EXPECT_EQ(parse("sqrt(c-t^2)").to_string(), "sqrt(c - t^2)");
  EXPECT_EQ(parse("-(t^2)").to_string(), "-t^2");
}

TEST(Eval, DomainErrorsNameTheSubexpression) {
  try {
    eval_jet2(parse("1 + sqrt(x - 2)"), xy(1, 0));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("sqrt(x - 2)"), std::string::npos) << e.what();
  }
  EXPECT_THROW(eval_jet2(parse("1/(x - 1)"), xy(1, 0)), DomainError);
  EXPECT_THROW(eval_jet2(parse("log(y)"), xy(1, 0)), DomainError);
  EXPECT_THROW(eval_jet2(parse("x^0.5"), xy(-1, 0)), DomainError);
  EXPECT_THROW(eval_jet2(parse("t"), xy(1, 0)), InvalidArgument);
  // Integer exponents of negative bases are fine.
  EXPECT_DOUBLE_EQ(eval_jet2(parse("x^3"), xy(-2, 0)).value, -8.0);
  EXPECT_DOUBLE_EQ(eval_jet2(parse("x^-2"), xy(-2, 0)).value, 0.25);
}

TEST(Jet, HandDerivatives) {
  // f = x^2 y at (3, 2): f_x = 2xy = 12, f_y = x^2 = 9, f_xx = 2y = 4, f_xy = 2x = 6.
  const Jet2 j = eval_jet2(parse("x^2*y"), xy(3, 2));
  EXPECT_DOUBLE_EQ(j.value, 18.0);
  EXPECT_DOUBLE_EQ(j.d(0), 12.0);
  EXPECT_DOUBLE_EQ(j.d(1), 9.0);
  EXPECT_DOUBLE_EQ(j.d2(0, 0), 4.0);
  EXPECT_DOUBLE_EQ(j.d2(0, 1), 6.0);
  EXPECT_DOUBLE_EQ(j.d2(1, 0), 6.0);
  EXPECT_DOUBLE_EQ(j.d2(1, 1), 0.0);
}

TEST(Jet, UnivariateMatchesClosedForm) {
  // a = sqrt(4 - t^2) at t = 1: a' = -t/a, a'' = -4/a^3.
  const Jet1 a = eval_univariate(parse("sqrt(c - t^2)"), 1.0, {{Var::C, Jet2::constant(4)}});
  const double r = std::sqrt(3.0);
  EXPECT_NEAR(a.value, r, 1e-15);
  EXPECT_NEAR(a.d1, -1 / r, 1e-15);
  EXPECT_NEAR(a.d2, -4 / (r * r * r), 1e-14);
}

TEST(Jet, PowIntMatchesRepeatedProduct) {
  const Jet2 x = Jet2::variable(1.3, 0) + 0.5 * Jet2::variable(0.2, 1);
  const Jet2 p = pow_int(x, 5);
  const Jet2 q = x * x * x * x * x;
  EXPECT_NEAR(p.value, q.value, 1e-12);
  EXPECT_NEAR(p.d(1), q.d(1), 1e-12);
  EXPECT_NEAR(p.d2(0, 1), q.d2(0, 1), 1e-11);
  const Jet2 r = pow_int(x, -3);
  const Jet2 s = 1.0 / (x * x * x);
  EXPECT_NEAR(r.d2(1, 1), s.d2(1, 1), 1e-12);
  EXPECT_DOUBLE_EQ(pow_int(x, 0).value, 1.0);
  EXPECT_TRUE(pow_int(x, 0).is_constant());
}

TEST(Jet, ElementaryFunctionsAgainstDifferences) {
  const char* cases[] = {"sin(x*y)", "cos(x - y)", "tan(x/3)",        "exp(x*y)",
                         "log(2 + x)", "atan(x*y)", "abs(x - 3)*y",    "sqrt(2 + x*y)",
                         "(1 + x^2)^0.7", "x/(2 + y^2)"};
  for (const char* src : cases) {
    const Expr e = parse(src);
    const double x = 0.4, y = -0.7;
    const Jet2 j = eval_jet2(e, xy(x, y));
    const Fd fd = finite_differences(e, x, y, 1e-4);
    EXPECT_NEAR(j.d(0), fd.fx, 1e-6) << src;
    EXPECT_NEAR(j.d(1), fd.fy, 1e-6) << src;
    EXPECT_NEAR(j.d2(0, 0), fd.fxx, 1e-5) << src;
    EXPECT_NEAR(j.d2(0, 1), fd.fxy, 1e-5) << src;
    EXPECT_NEAR(j.d2(1, 1), fd.fyy, 1e-5) << src;
  }
}

TEST(Jet, RandomExpressionsAgainstDifferences) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> pt(-1, 1);
  for (int k = 0; k < 50; ++k) {
    const std::string src = random_expr(rng, 4);
    const Expr e = parse(src);
    const double x = pt(rng), y = pt(rng);
    const Jet2 j = eval_jet2(e, xy(x, y));
    const Fd fd = finite_differences(e, x, y, 1e-4);
    const auto rel = [](double a, double b) { return std::abs(a - b) / (1 + std::abs(b)); };
    EXPECT_LE(rel(j.d(0), fd.fx), 1e-6) << src;
    EXPECT_LE(rel(j.d(1), fd.fy), 1e-6) << src;
    EXPECT_LE(rel(j.d2(0, 0), fd.fxx), 1e-4) << src;
    EXPECT_LE(rel(j.d2(0, 1), fd.fxy), 1e-4) << src;
    EXPECT_LE(rel(j.d2(1, 1), fd.fyy), 1e-4) << src;
    // The canonical text evaluates to the same jet.
    const Jet2 again = eval_jet2(parse(e.to_string()), xy(x, y));
    EXPECT_EQ(again.value, j.value) << src;
  }
}

TEST(Expr, UsesReportsVariables) {
  const Expr e = parse("sqrt(c - t^2)");
  EXPECT_TRUE(e.uses(Var::T));
  EXPECT_TRUE(e.uses(Var::C));
  EXPECT_FALSE(e.uses(Var::S));
}
