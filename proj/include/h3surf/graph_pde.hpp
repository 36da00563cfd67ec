#pragma once

// Equations for an S2 graph z = f(x, y) whose coordinates satisfy
// Lap r_i = l_i r_i, sorted by which eigenvalues vanish. With
// K = 1 + (f_x + y/2)^2 (1 + u^2):
//
//   lambda2-only   f_x = -2 u x / (1 + u^2) - y/2          (l1 = l3 = 0)
//   lambda1-only   f_x = 2 / (y (1 + u^2)) - y/2           (l2 = l3 = 0)
//   distinct12     f_xx + f_yy = 1/2 k x y K^2             (l3 = 0, l1 != l2)
//   lambda23       f_xx + f_yy = 1/2 (l2 x y - 2 l3 f) K^2 (l1 = 0)
//   lambda13       f_xx + f_yy = -1/2 (l1 x y + 2 l3 f) K^2 (l2 = 0)
//   equal12        f_xx + f_yy = -l3 f K^2                 (l1 = l2)
//   all-equal      f_xx + f_yy = -l f K^2                  (l1 = l2 = l3 = l)
//
// In distinct12 the coefficient k is l2 or l2 - l1, see DistinctCoefficient.

#include <functional>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "h3surf/expr.hpp"
#include "h3surf/ruled.hpp"

namespace h3surf {

enum class GraphEquation {
  SlopeLambda2,
  SlopeLambda1,
  Lambda12Distinct,
  Lambda23,
  Lambda13,
  Lambda12Equal,
  AllEqual,
};

const char* graph_equation_name(GraphEquation e);
/// Throws InvalidArgument for unknown names.
GraphEquation parse_graph_equation(std::string_view name);
bool is_second_order(GraphEquation e);

enum class DistinctCoefficient { Lambda2, Difference };

struct Eigenvalues {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;  // also the common value in all-equal
  DistinctCoefficient distinct = DistinctCoefficient::Lambda2;
};

/// Derivatives of f at (x, y); unused entries may stay zero.
struct GraphPoint {
  double x = 0.0;
  double y = 0.0;
  double f = 0.0;
  double fx = 0.0;
  double fy = 0.0;
  double fxx = 0.0;
  double fyy = 0.0;
};

/// How u enters the equations: a constant u0, or u(t(x, y)) of an S2 family
/// with t solved from x = t + y u(t).
class UMode {
 public:
  static UMode constant(double u0) { return UMode(u0); }
  static UMode implicit(S2Params family) { return UMode(std::move(family)); }

  double at(double x, double y) const;
  bool is_constant() const { return std::holds_alternative<double>(mode_); }

 private:
  explicit UMode(double u0) : mode_(u0) {}
  explicit UMode(S2Params family) : mode_(std::move(family)) {}
  std::variant<double, S2Params> mode_;
};

/// Left-hand side minus right-hand side. Throws DomainError at y = 0 for
/// lambda1-only.
double graph_equation_residual(GraphEquation e, const GraphPoint& p, const Eigenvalues& l,
                               double u);

/// Residual for an explicit graph f(x, y), derivatives by jets.
double graph_equation_residual(GraphEquation e, const Expr& f, double x, double y,
                               const Eigenvalues& l, const UMode& u);

/// Residual for the graph of an S2 family; u is that family's u(t(x, y)).
double graph_equation_residual(GraphEquation e, const S2Params& family, double x, double y,
                               const Eigenvalues& l);

/// Right-hand side of a second-order equation.
double graph_equation_rhs(GraphEquation e, double x, double y, double f, double fx,
                          const Eigenvalues& l, double u);

struct PdeGrid {
  double x0 = -1.0;
  double x1 = 1.0;
  double y0 = -1.0;
  double y1 = 1.0;
  int nx = 33;
  int ny = 33;

  double dx() const { return (x1 - x0) / (nx - 1); }
  double dy() const { return (y1 - y0) / (ny - 1); }
  double x(int i) const { return i == nx - 1 ? x1 : x0 + i * dx(); }
  double y(int j) const { return j == ny - 1 ? y1 : y0 + j * dy(); }
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
           static_cast<std::size_t>(i);
  }
  std::size_t size() const { return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny); }
  /// Nodes on the boundary: 2 nx + 2 (ny - 2).
  std::size_t perimeter_size() const {
    return 2 * static_cast<std::size_t>(nx) + 2 * static_cast<std::size_t>(ny - 2);
  }
};

/// Boundary values in perimeter order: bottom row (j = 0, i ascending), top
/// row (j = ny - 1), left column (i = 0, j = 1 .. ny - 2), right column.
std::vector<double> perimeter_values(const PdeGrid& grid,
                                     const std::function<double(double, double)>& g);

struct PdeOptions {
  int max_iterations = 50;
  double tolerance = 1e-10;     // max-norm of the discrete residual
  double min_damping = 0x1p-20;
};

struct PdeProblem {
  GraphEquation equation = GraphEquation::Lambda12Equal;
  Eigenvalues lambda;
  UMode u = UMode::constant(0.0);
  PdeGrid grid;
  std::vector<double> boundary;  // perimeter order
  PdeOptions options;
};

struct PdeSolution {
  PdeGrid grid;
  std::vector<double> f;  // row-major, index(i, j)
  double residual = 0.0;
  int iterations = 0;
  std::vector<double> residual_history;

  double at(int i, int j) const { return f[grid.index(i, j)]; }
};

/// Damped Newton on the 5-point discretization
///   D_xx f + D_yy f - RHS(f, D_x f) = 0
/// at interior nodes, Dirichlet data on the perimeter, starting from the
/// Coons patch of the boundary. Each Newton step is halved until the residual
/// drops (down to min_damping). Throws ConvergenceError with the last residual.
PdeSolution pde_solve(const PdeProblem& problem);

/// Max over interior nodes of graph_equation_residual with centred
/// differences of the grid values in place of the derivatives.
double pde_interior_residual(const PdeProblem& problem, const std::vector<double>& f);

}  // namespace h3surf
