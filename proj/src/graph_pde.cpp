#include "h3surf/graph_pde.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "h3surf/error.hpp"
#include "h3surf/jet.hpp"

namespace h3surf {

namespace {

struct NamedEquation {
  GraphEquation eq;
  const char* name;
};

constexpr std::array<NamedEquation, 7> kEquations{{
    {GraphEquation::SlopeLambda2, "lambda2-only"},
    {GraphEquation::SlopeLambda1, "lambda1-only"},
    {GraphEquation::Lambda12Distinct, "distinct12"},
    {GraphEquation::Lambda23, "lambda23"},
    {GraphEquation::Lambda13, "lambda13"},
    {GraphEquation::Lambda12Equal, "equal12"},
    {GraphEquation::AllEqual, "all-equal"},
}};

// T is double or Jet2 (f and f_x seeded as the two jet variables).
template <class T>
T rhs(GraphEquation e, double x, double y, const T& f, const T& fx, const Eigenvalues& l,
      double u) {
  const T p = fx + 0.5 * y;
  const T k = 1.0 + p * p * (1.0 + u * u);
  const T k2 = k * k;
  switch (e) {
    case GraphEquation::Lambda12Distinct: {
      const double coef = l.distinct == DistinctCoefficient::Lambda2 ? l.l2 : l.l2 - l.l1;
      return (0.5 * coef * x * y) * k2;
    }
    case GraphEquation::Lambda23:
      return 0.5 * (l.l2 * x * y - 2.0 * l.l3 * f) * k2;
    case GraphEquation::Lambda13:
      return -0.5 * (l.l1 * x * y + 2.0 * l.l3 * f) * k2;
    case GraphEquation::Lambda12Equal:
    case GraphEquation::AllEqual:
      return -l.l3 * f * k2;
    case GraphEquation::SlopeLambda2:
    case GraphEquation::SlopeLambda1:
      break;
  }
  throw InvalidArgument(std::string("equation ") + graph_equation_name(e) +
                        " is first order and has no Laplacian right-hand side");
}

}  // namespace

const char* graph_equation_name(GraphEquation e) {
  for (const auto& n : kEquations) {
    if (n.eq == e) return n.name;
  }
  return "?";
}

GraphEquation parse_graph_equation(std::string_view name) {
  for (const auto& n : kEquations) {
    if (name == n.name) return n.eq;
  }
  throw InvalidArgument("unknown equation '" + std::string(name) + "'");
}

bool is_second_order(GraphEquation e) {
  return e != GraphEquation::SlopeLambda2 && e != GraphEquation::SlopeLambda1;
}

double UMode::at(double x, double y) const {
  if (const double* u0 = std::get_if<double>(&mode_)) return *u0;
  return s2_u_jet(std::get<S2Params>(mode_), x, y).value;
}

double graph_equation_rhs(GraphEquation e, double x, double y, double f, double fx,
                          const Eigenvalues& l, double u) {
  return rhs<double>(e, x, y, f, fx, l, u);
}

double graph_equation_residual(GraphEquation e, const GraphPoint& p, const Eigenvalues& l,
                               double u) {
  switch (e) {
    case GraphEquation::SlopeLambda2:
      return p.fx - (-2.0 * u * p.x / (1.0 + u * u) - 0.5 * p.y);
    case GraphEquation::SlopeLambda1:
      if (p.y == 0.0) throw DomainError("lambda1-only slope equation has a pole at y = 0");
      return p.fx - (2.0 / (p.y * (1.0 + u * u)) - 0.5 * p.y);
    default:
      return p.fxx + p.fyy - rhs<double>(e, p.x, p.y, p.f, p.fx, l, u);
  }
}

namespace {

GraphPoint point_from_jet(double x, double y, const Jet2& f) {
  return {x, y, f.value, f.d(0), f.d(1), f.d2(0, 0), f.d2(1, 1)};
}

}  // namespace

double graph_equation_residual(GraphEquation e, const Expr& f, double x, double y,
                               const Eigenvalues& l, const UMode& u) {
  const Jet2 j = eval_jet2(f, {{Var::X, Jet2::variable(x, 0)}, {Var::Y, Jet2::variable(y, 1)}});
  return graph_equation_residual(e, point_from_jet(x, y, j), l, u.at(x, y));
}

double graph_equation_residual(GraphEquation e, const S2Params& family, double x, double y,
                               const Eigenvalues& l) {
  const Jet2 f = s2_graph_jet(family, x, y);
  const double u = s2_u_jet(family, x, y).value;
  return graph_equation_residual(e, point_from_jet(x, y, f), l, u);
}

std::vector<double> perimeter_values(const PdeGrid& grid,
                                     const std::function<double(double, double)>& g) {
  std::vector<double> out;
  out.reserve(grid.perimeter_size());
  for (int i = 0; i < grid.nx; ++i) out.push_back(g(grid.x(i), grid.y(0)));
  for (int i = 0; i < grid.nx; ++i) out.push_back(g(grid.x(i), grid.y(grid.ny - 1)));
  for (int j = 1; j < grid.ny - 1; ++j) out.push_back(g(grid.x(0), grid.y(j)));
  for (int j = 1; j < grid.ny - 1; ++j) out.push_back(g(grid.x(grid.nx - 1), grid.y(j)));
  return out;
}

namespace {

void validate(const PdeProblem& pb) {
  const PdeGrid& g = pb.grid;
  if (!is_second_order(pb.equation)) {
    throw InvalidArgument(std::string("pde_solve: ") + graph_equation_name(pb.equation) +
                          " is a first-order equation");
  }
  if (g.nx < 5 || g.ny < 5) throw InvalidArgument("pde_solve: grid must be at least 5x5");
  if (!(g.x1 > g.x0) || !(g.y1 > g.y0)) throw InvalidArgument("pde_solve: empty domain");
  if (pb.boundary.size() != g.perimeter_size()) {
    throw InvalidArgument("pde_solve: boundary has " + std::to_string(pb.boundary.size()) +
                          " values, grid perimeter has " + std::to_string(g.perimeter_size()));
  }
}

// Boundary values in place, interior from the Coons patch of the boundary.
std::vector<double> initial_guess(const PdeGrid& g, const std::vector<double>& boundary) {
  std::vector<double> f(g.size(), 0.0);
  std::size_t k = 0;
  for (int i = 0; i < g.nx; ++i) f[g.index(i, 0)] = boundary[k++];
  for (int i = 0; i < g.nx; ++i) f[g.index(i, g.ny - 1)] = boundary[k++];
  for (int j = 1; j < g.ny - 1; ++j) f[g.index(0, j)] = boundary[k++];
  for (int j = 1; j < g.ny - 1; ++j) f[g.index(g.nx - 1, j)] = boundary[k++];

  const auto B = [&](int i) { return f[g.index(i, 0)]; };
  const auto T = [&](int i) { return f[g.index(i, g.ny - 1)]; };
  const auto L = [&](int j) { return f[g.index(0, j)]; };
  const auto R = [&](int j) { return f[g.index(g.nx - 1, j)]; };
  for (int j = 1; j < g.ny - 1; ++j) {
    const double t = static_cast<double>(j) / (g.ny - 1);
    for (int i = 1; i < g.nx - 1; ++i) {
      const double s = static_cast<double>(i) / (g.nx - 1);
      f[g.index(i, j)] = (1 - s) * L(j) + s * R(j) + (1 - t) * B(i) + t * T(i) -
                         ((1 - s) * (1 - t) * B(0) + s * (1 - t) * B(g.nx - 1) +
                          (1 - s) * t * T(0) + s * t * T(g.nx - 1));
    }
  }
  return f;
}

struct Discretization {
  const PdeProblem& pb;
  std::vector<double> u;  // u at every node

  explicit Discretization(const PdeProblem& p) : pb(p) {
    const PdeGrid& g = pb.grid;
    u.resize(g.size());
    for (int j = 0; j < g.ny; ++j) {
      for (int i = 0; i < g.nx; ++i) u[g.index(i, j)] = pb.u.at(g.x(i), g.y(j));
    }
  }

  int unknown(int i, int j) const { return (j - 1) * (pb.grid.nx - 2) + (i - 1); }
  int unknowns() const { return (pb.grid.nx - 2) * (pb.grid.ny - 2); }

  // Residual vector over interior nodes; fills the Jacobian when asked.
  Eigen::VectorXd residual(const std::vector<double>& f,
                           Eigen::SparseMatrix<double>* jac = nullptr) const {
    const PdeGrid& g = pb.grid;
    const double dx = g.dx();
    const double dy = g.dy();
    const double idx2 = 1.0 / (dx * dx);
    const double idy2 = 1.0 / (dy * dy);
    Eigen::VectorXd r(unknowns());
    std::vector<Eigen::Triplet<double>> trip;
    if (jac) trip.reserve(static_cast<std::size_t>(unknowns()) * 5);
    for (int j = 1; j < g.ny - 1; ++j) {
      for (int i = 1; i < g.nx - 1; ++i) {
        const double c = f[g.index(i, j)];
        const double e = f[g.index(i + 1, j)];
        const double w = f[g.index(i - 1, j)];
        const double n = f[g.index(i, j + 1)];
        const double s = f[g.index(i, j - 1)];
        const double fx = (e - w) / (2.0 * dx);
        const Jet2 q = rhs<Jet2>(pb.equation, g.x(i), g.y(j), Jet2::variable(c, 0),
                                 Jet2::variable(fx, 1), pb.lambda, u[g.index(i, j)]);
        const int row = unknown(i, j);
        r[row] = (e - 2.0 * c + w) * idx2 + (n - 2.0 * c + s) * idy2 - q.value;
        if (!jac) continue;
        const double dq_df = q.d(0);
        const double dq_dfx = q.d(1);
        trip.emplace_back(row, row, -2.0 * idx2 - 2.0 * idy2 - dq_df);
        const auto add = [&](int ii, int jj, double v) {
          if (ii > 0 && ii < g.nx - 1 && jj > 0 && jj < g.ny - 1) {
            trip.emplace_back(row, unknown(ii, jj), v);
          }
        };
        add(i + 1, j, idx2 - dq_dfx / (2.0 * dx));
        add(i - 1, j, idx2 + dq_dfx / (2.0 * dx));
        add(i, j + 1, idy2);
        add(i, j - 1, idy2);
      }
    }
    if (jac) {
      jac->resize(unknowns(), unknowns());
      jac->setFromTriplets(trip.begin(), trip.end());
    }
    return r;
  }
};

double max_norm(const Eigen::VectorXd& r) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < r.size(); ++k) {
    if (!std::isfinite(r[k])) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(r[k]));
  }
  return m;
}

}  // namespace

PdeSolution pde_solve(const PdeProblem& problem) {
  validate(problem);
  const PdeGrid& g = problem.grid;
  const Discretization disc(problem);
  PdeSolution sol;
  sol.grid = g;
  sol.f = initial_guess(g, problem.boundary);

  Eigen::SparseMatrix<double> jac;
  Eigen::VectorXd r = disc.residual(sol.f, &jac);
  double norm = max_norm(r);
  sol.residual_history.push_back(norm);

  for (int it = 0; it < problem.options.max_iterations; ++it) {
    if (norm <= problem.options.tolerance) break;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.compute(jac);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("pde_solve: singular Jacobian at iteration " + std::to_string(it));
    }
    const Eigen::VectorXd step = lu.solve(-r);
    if (lu.info() != Eigen::Success) {
      throw NumericalError("pde_solve: linear solve failed at iteration " + std::to_string(it));
    }

    double alpha = 1.0;
    std::vector<double> trial;
    double trial_norm = 0.0;
    for (;;) {
      trial = sol.f;
      for (int j = 1; j < g.ny - 1; ++j) {
        for (int i = 1; i < g.nx - 1; ++i) {
          trial[g.index(i, j)] += alpha * step[disc.unknown(i, j)];
        }
      }
      trial_norm = max_norm(disc.residual(trial));
      if (trial_norm < norm) break;
      alpha *= 0.5;
      if (alpha < problem.options.min_damping) {
        throw ConvergenceError("pde_solve: damped Newton step stalled", norm, it);
      }
    }
    sol.f = std::move(trial);
    r = disc.residual(sol.f, &jac);
    norm = max_norm(r);
    sol.residual_history.push_back(norm);
    sol.iterations = it + 1;
  }
  sol.residual = norm;
  if (!(norm <= problem.options.tolerance)) {
    throw ConvergenceError("pde_solve: no convergence after " +
                               std::to_string(problem.options.max_iterations) + " iterations",
                           norm, sol.iterations);
  }
  return sol;
}

double pde_interior_residual(const PdeProblem& problem, const std::vector<double>& f) {
  const PdeGrid& g = problem.grid;
  if (f.size() != g.size()) throw InvalidArgument("pde_interior_residual: grid size mismatch");
  const double dx = g.dx();
  const double dy = g.dy();
  double worst = 0.0;
  for (int j = 1; j < g.ny - 1; ++j) {
    for (int i = 1; i < g.nx - 1; ++i) {
      const double c = f[g.index(i, j)];
      GraphPoint p;
      p.x = g.x(i);
      p.y = g.y(j);
      p.f = c;
      p.fx = (f[g.index(i + 1, j)] - f[g.index(i - 1, j)]) / (2.0 * dx);
      p.fy = (f[g.index(i, j + 1)] - f[g.index(i, j - 1)]) / (2.0 * dy);
      p.fxx = (f[g.index(i + 1, j)] - 2.0 * c + f[g.index(i - 1, j)]) / (dx * dx);
      p.fyy = (f[g.index(i, j + 1)] - 2.0 * c + f[g.index(i, j - 1)]) / (dy * dy);
      const double r =
          graph_equation_residual(problem.equation, p, problem.lambda, problem.u.at(p.x, p.y));
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

}  // namespace h3surf
