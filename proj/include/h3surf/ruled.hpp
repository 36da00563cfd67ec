#pragma once

// The two families of surfaces ruled by geodesic straight lines:
//   S1: r(t, s) = (t, a(t), 0) + s (0, 0, 1)
//   S2: r(t, s) = (t, 0, a(t)) + s (u(t), 1, t/2), a graph z = f(x, y) with
//       x = t + s u(t), y = s, f = a(t) + t s / 2.

#include <array>
#include <optional>
#include <vector>

#include "h3surf/chart.hpp"
#include "h3surf/laplace.hpp"

namespace h3surf {

struct S1Params {
  Expr a;
  ParamRect domain;
  std::optional<double> c;  // value of the constant `c` if a uses it
};

Chart s1_chart(const S1Params& p);

/// Closed-form data of S1 at parameter t (nothing depends on s).
struct S1ClosedForm {
  double a = 0.0;
  double da = 0.0;
  double dda = 0.0;
  double E = 0.0;   // 1 + a'^2 + (a - t a')^2 / 4
  double F = 0.0;   // (a - t a') / 2
  double G = 1.0;
  double W2 = 0.0;  // 1 + a'^2
  // Mean curvature a'' / (2 W^3) of the unit-normal pipeline.
  double H = 0.0;
  // a'' / (2 W^2) = W H, the quantity in terms of which the S1 Laplacians
  // below are usually written.
  double H_scaled = 0.0;
};

S1ClosedForm s1_closed_form(const S1Params& p, double t);

/// Laplace-Beltrami of the coordinates in closed form:
///   (2 a' Hs / W^2, -2 Hs / W^2, -(t + a a') Hs / W^2),  Hs = H_scaled.
std::array<double, 3> s1_laplacian_closed(const S1Params& p, double t, double s);

enum class S1Case { Minimal, Cylinder, Neither };

const char* s1_case_name(S1Case c);

struct S1ClassifyOptions {
  double tol_minimal = 1e-10;   // on max |H|
  double tol_cylinder = 1e-8;   // on max |a a' + t|
  double tol_lambda = 1e-6;     // fitted lambda_1, lambda_2 against 1/c
};

struct S1Classification {
  S1Case kind = S1Case::Neither;
  double max_abs_H = 0.0;
  double max_cylinder_defect = 0.0;
  std::optional<double> c;  // mean of a^2 + t^2 when a cylinder
  std::optional<FiniteTypeReport> fit;
  // Cylinder only: fitted lambda_1 = lambda_2 = 1/c within tol_lambda.
  bool lambda_consistent = false;
};

/// Grid parameters are (t, s).
S1Classification s1_classify(const S1Params& p, const GridSpec& grid,
                             const S1ClassifyOptions& options = {});

struct ImplicitSolverConfig {
  int max_iterations = 100;
  double tolerance = 1e-12;      // on |x - t - y u(t)|
  double initial_bracket = 0.5;  // half width of the first bisection bracket
  int max_bracket_growth = 60;
  double min_jacobian = 1e-10;   // smallest admissible |1 + y u'(t)|
};

struct S2Params {
  Expr a;
  Expr u;
  ParamRect domain;
  std::optional<double> c;
  ImplicitSolverConfig solver;
};

Chart s2_chart(const S2Params& p);

struct ImplicitT {
  double t = 0.0;
  double t_x = 0.0;  // 1 / (1 + y u'(t))
  double t_y = 0.0;  // -u(t) t_x
  double residual = 0.0;
  int iterations = 0;
  bool bisected = false;
};

/// Solves x = t + y u(t) for t. Newton from t = x - y u(x), falling back to
/// bisection on a geometrically grown bracket. Throws ConvergenceError when no
/// bracket is found and DegenerateChartError when |1 + y u'(t)| is too small.
ImplicitT s2_solve_t(const S2Params& p, double x, double y);

/// t(x, y) with first and second derivatives in (x, y).
Jet2 s2_t_jet(const S2Params& p, double x, double y);
/// u(t(x, y)) as a jet in (x, y).
Jet2 s2_u_jet(const S2Params& p, double x, double y);
/// The graph function f(x, y) = a(t) + t y / 2 as a jet in (x, y).
Jet2 s2_graph_jet(const S2Params& p, double x, double y);

struct PQ {
  double P = 0.0;  // f_x + y/2
  double Q = 0.0;  // f_y - x/2
  double u = 0.0;
  double t = 0.0;
};

/// P and Q from f_x = (a' + y/2) t_x and f_y = (a' + y/2) t_y + t/2. Throws
/// NumericalError if Q + u P exceeds 1e-9 (1 + |u P|).
PQ s2_P_Q(const S2Params& p, double x, double y);

struct S2ResidualPoint {
  double x = 0.0;
  double y = 0.0;
  double t = 0.0;
  double f = 0.0;
  double u = 0.0;
  double P = 0.0;
  double W = 0.0;  // sqrt(1 + P^2 + Q^2)
  double H = 0.0;
  // (P_x + Q_y) / (2 W^3), the mean curvature simplified with Q = -uP.
  double H_simplified = 0.0;
  std::array<double, 3> residual{};
};

struct S2ResidualReport {
  std::array<double, 3> lambda{};  // lambda tilde used for the residuals
  bool fitted = false;
  std::array<double, 3> max_abs{};
  std::array<double, 3> rms{};
  double max_H_gap = 0.0;  // max |H - H_simplified|
  std::vector<S2ResidualPoint> points;
};

/// Pointwise residuals of
///   -P/W^2 (u - 2 H W)  = l1 x
///   -P/W^2 (1 + 2 u H W) = l2 y
///   4 H / W = (l2 - l1) x y - 2 l3 f
/// on a grid in (x, y). With `fit`, the l_i are least-squares fitted first
/// (l1, l2 from their own equations, then l3 given those) and `lambda` is ignored.
S2ResidualReport s2_system_residuals(const S2Params& p, const GridSpec& grid,
                                     std::array<double, 3> lambda, bool fit = false);

/// a(t) tabulated from a' = -2 u(t) t / (1 + u(t)^2), the y = 0 trace of the
/// slope equation with lambda_2 alone.
class ProfileTable {
 public:
  ProfileTable(std::vector<double> t, std::vector<double> a, std::vector<double> da);

  /// Cubic Hermite interpolation; throws InvalidArgument outside the table.
  double operator()(double t) const;
  const std::vector<double>& t() const { return t_; }
  const std::vector<double>& a() const { return a_; }
  const std::vector<double>& da() const { return da_; }

 private:
  std::vector<double> t_, a_, da_;
};

/// Classical RK4 from (t0, a0) over [t_lo, t_hi] (t0 inside) with the given
/// number of equal steps over the whole range. Throws NumericalError if the
/// solution stops being finite.
ProfileTable integrate_s2_profile(const Expr& u, double t_lo, double t_hi, double t0,
                                  double a0, int steps = 2000,
                                  std::optional<double> c = std::nullopt);

}  // namespace h3surf
