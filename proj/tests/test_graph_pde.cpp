#include <gtest/gtest.h>

#include <cmath>

#include "h3surf/error.hpp"
#include "h3surf/expr.hpp"
#include "h3surf/graph_pde.hpp"

using namespace h3surf;

namespace {

PdeProblem problem(GraphEquation e, Eigenvalues l, double u0, int n, const char* boundary) {
  PdeProblem p;
  p.equation = e;
  p.lambda = l;
  p.u = UMode::constant(u0);
  p.grid.nx = p.grid.ny = n;
  const Expr g = parse(boundary);
  p.boundary = perimeter_values(p.grid, [&](double x, double y) {
    return eval(g, {{Var::X, Jet2::constant(x)}, {Var::Y, Jet2::constant(y)}});
  });
  return p;
}

}  // namespace

TEST(GraphEquation, NamesRoundTrip) {
  for (auto e : {GraphEquation::SlopeLambda2, GraphEquation::SlopeLambda1,
                 GraphEquation::Lambda12Distinct, GraphEquation::Lambda23, GraphEquation::Lambda13,
                 GraphEquation::Lambda12Equal, GraphEquation::AllEqual}) {
    EXPECT_EQ(parse_graph_equation(graph_equation_name(e)), e);
  }
  EXPECT_STREQ(graph_equation_name(GraphEquation::Lambda12Distinct), "distinct12");
  EXPECT_THROW(parse_graph_equation("lambda99"), InvalidArgument);
  EXPECT_FALSE(is_second_order(GraphEquation::SlopeLambda1));
  EXPECT_TRUE(is_second_order(GraphEquation::AllEqual));
}

TEST(GraphEquation, SlopeEquationsHaveExplicitSolutions) {
  // lambda2-only: f = -u x^2 / (1 + u^2) - x y / 2 + g(y).
  const Eigenvalues l{};
  for (double x : {-0.7, 0.4})
    for (double y : {-0.3, 0.9}) {
      EXPECT_NEAR(graph_equation_residual(GraphEquation::SlopeLambda2,
                                          parse("-0.4*x^2 - x*y/2 + y^3"), x, y, l,
                                          UMode::constant(0.5)),
                  0.0, 1e-15);
      // lambda1-only: f = 2 x / (y (1 + u^2)) - x y / 2 + g(y).
      EXPECT_NEAR(graph_equation_residual(GraphEquation::SlopeLambda1,
                                          parse("1.6*x/y - x*y/2 + cos(y)"), x, y, l,
                                          UMode::constant(0.5)),
                  0.0, 1e-14);
    }
  EXPECT_THROW(graph_equation_residual(GraphEquation::SlopeLambda1, GraphPoint{0.5, 0.0}, l, 0.5),
               DomainError);
}

TEST(GraphEquation, HandResiduals) {
  // all-equal at f = 1, flat, y = 0, f_x = 0: K = 1 and the residual is l.
  GraphPoint p{0.3, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(graph_equation_residual(GraphEquation::AllEqual, p, {0, 0, 2}, 0.0), 2.0);
  // K = 1 + (f_x + y/2)^2 (1 + u^2) = 1 + 1 * 2 = 3 at f_x = 0.5, y = 1, u = 1.
  GraphPoint q{1.0, 1.0, 2.0, 0.5, 0.0, 0.25, 0.75};
  EXPECT_DOUBLE_EQ(graph_equation_rhs(GraphEquation::Lambda12Equal, 1, 1, 2, 0.5, {0, 0, 0.5}, 1),
                   -0.5 * 2 * 9);
  EXPECT_DOUBLE_EQ(graph_equation_residual(GraphEquation::Lambda12Equal, q, {0, 0, 0.5}, 1),
                   1.0 + 9.0);
  EXPECT_DOUBLE_EQ(graph_equation_rhs(GraphEquation::Lambda23, 1, 1, 2, 0.5, {0, 1, 0.5}, 1),
                   0.5 * (1 - 2) * 9);
  EXPECT_DOUBLE_EQ(graph_equation_rhs(GraphEquation::Lambda13, 1, 1, 2, 0.5, {1, 0, 0.5}, 1),
                   -0.5 * (1 + 2) * 9);
}

TEST(GraphEquation, DistinctCoefficientReadings) {
  // x = y = 1, f_x = -1/2 so K = 1.
  Eigenvalues l{1, 3, 0};
  EXPECT_DOUBLE_EQ(graph_equation_rhs(GraphEquation::Lambda12Distinct, 1, 1, 0, -0.5, l, 0.7), 1.5);
  l.distinct = DistinctCoefficient::Difference;
  EXPECT_DOUBLE_EQ(graph_equation_rhs(GraphEquation::Lambda12Distinct, 1, 1, 0, -0.5, l, 0.7), 1.0);
}

TEST(PdeGrid, PerimeterOrder) {
  PdeGrid g{0, 2, 0, 1, 3, 4};
  const auto v = perimeter_values(g, [](double x, double y) { return 10 * x + y; });
  ASSERT_EQ(v.size(), g.perimeter_size());
  ASSERT_EQ(v.size(), 10u);
  const double expect[] = {0, 10, 20, 1, 11, 21, 1.0 / 3, 2.0 / 3, 20 + 1.0 / 3, 20 + 2.0 / 3};
  for (std::size_t k = 0; k < v.size(); ++k) EXPECT_NEAR(v[k], expect[k], 1e-15) << k;
}

TEST(PdeSolve, HarmonicDataIsExact) {
  const PdeProblem p = problem(GraphEquation::Lambda12Equal, {0, 0, 0}, 0.0, 17, "x^2 - y^2");
  const PdeSolution s = pde_solve(p);
  EXPECT_LE(s.residual, 1e-10);
  for (int j = 0; j < s.grid.ny; ++j)
    for (int i = 0; i < s.grid.nx; ++i) {
      const double x = s.grid.x(i), y = s.grid.y(j);
      EXPECT_NEAR(s.at(i, j), x * x - y * y, 1e-12);
    }
}

TEST(PdeSolve, NonlinearProblemConverges) {
  const PdeProblem p = problem(GraphEquation::Lambda12Equal, {0, 0, 0.1}, 0.0, 33, "x*y/2 + 0.3*x");
  const PdeSolution s = pde_solve(p);
  EXPECT_LE(s.residual, 1e-10);
  ASSERT_GE(s.residual_history.size(), 2u);
  for (std::size_t k = 1; k < s.residual_history.size(); ++k) {
    EXPECT_LT(s.residual_history[k], s.residual_history[k - 1]);
  }
  // Independent evaluation of the equation at the discrete solution.
  EXPECT_LE(pde_interior_residual(p, s.f), 1e-9);
}

TEST(PdeSolve, SecondOrderGridConvergence) {
  const auto solve = [](int n) {
    return pde_solve(problem(GraphEquation::Lambda23, {0, 0.5, 0.2}, 0.3, n, "x*y/2 + 0.3*x"));
  };
  const PdeSolution a = solve(9), b = solve(17), c = solve(33);
  double d1 = 0, d2 = 0;
  for (int j = 0; j < 9; ++j)
    for (int i = 0; i < 9; ++i) {
      d1 = std::max(d1, std::abs(a.at(i, j) - b.at(2 * i, 2 * j)));
      d2 = std::max(d2, std::abs(b.at(2 * i, 2 * j) - c.at(4 * i, 4 * j)));
    }
  ASSERT_GT(d2, 0.0);
  EXPECT_GT(d1 / d2, 3.0);
  EXPECT_LT(d1 / d2, 5.0);
}

TEST(PdeSolve, ReportsNonConvergence) {
  PdeProblem p = problem(GraphEquation::Lambda12Equal, {0, 0, 0.1}, 0.0, 17, "x*y/2 + 0.3*x");
  p.options.max_iterations = 1;
  try {
    pde_solve(p);
    FAIL();
  } catch (const ConvergenceError& e) {
    EXPECT_GT(e.last_residual(), 1e-10);
    EXPECT_EQ(e.iterations(), 1);
  }
}

TEST(PdeSolve, RejectsBadInput) {
  PdeProblem p = problem(GraphEquation::Lambda12Equal, {0, 0, 0.1}, 0.0, 17, "0");
  p.boundary.pop_back();
  EXPECT_THROW(pde_solve(p), InvalidArgument);
  PdeProblem q = problem(GraphEquation::SlopeLambda2, {}, 0.0, 17, "0");
  EXPECT_THROW(pde_solve(q), InvalidArgument);
}
