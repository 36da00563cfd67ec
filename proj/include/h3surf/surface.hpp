#pragma once

#include <optional>

#include "h3surf/chart.hpp"
#include "h3surf/h3.hpp"

namespace h3surf {

struct TangentBasis {
  FrameVector ru;
  FrameVector rv;
};

struct FirstForm {
  double E = 0.0;
  double F = 0.0;
  double G = 0.0;
  double W2 = 0.0;  // EG - F^2
};

/// Second fundamental form with the sign L = -<nabla_{r_u} r_u, N>.
struct SecondForm {
  double L = 0.0;
  double M = 0.0;
  double N = 0.0;
};

struct Mat2 {
  double m00 = 0.0;
  double m01 = 0.0;
  double m10 = 0.0;
  double m11 = 0.0;

  double trace() const { return m00 + m11; }
};

/// Everything the pointwise pipeline knows at one chart point.
struct SurfaceData {
  ParamPoint param;
  CoordPoint point;
  TangentBasis basis;
  FirstForm first;
  SecondForm second;
  FrameVector normal;
  double H = 0.0;
  // Graph shorthand P = f_x + y/2, Q = f_y - x/2; plain graphs only.
  std::optional<double> P;
  std::optional<double> Q;
  // Graph-form mean curvature from the minimal-surface numerator over 2 W^3.
  std::optional<double> H_graph;
};

/// Points with EG - F^2 at or below this are reported as degenerate.
inline constexpr double kDegenerateW2 = 1e-12;

TangentBasis tangent_basis(const Chart& chart, ParamPoint p);
FirstForm first_form(const Chart& chart, ParamPoint p);
FrameVector unit_normal(const Chart& chart, ParamPoint p);
SecondForm second_form(const Chart& chart, ParamPoint p);
double mean_curvature(const Chart& chart, ParamPoint p);
/// A = I^{-1} II; half its trace is the mean curvature.
Mat2 shape_operator(const Chart& chart, ParamPoint p);
SurfaceData surface_data(const Chart& chart, ParamPoint p);

/// Default finite-difference step for the surface Christoffel symbols.
double default_christoffel_step(ParamPoint p);

/// Laplacian of the immersion, in frame components at r(p), with the same
/// leading-minus sign as the scalar Laplace-Beltrami operator:
///   -g^{ij} (nabla_{d_i} d_j r - Gamma^k_{ij} d_k r),
/// which equals 2 H N. Christoffel symbols come from fourth-order central
/// differences of E, F, G with step h (h <= 0 selects default_christoffel_step);
/// the stencil needs 2h of room inside the chart domain.
FrameVector tension_field(const Chart& chart, ParamPoint p, double h = 0.0);

/// Left-hand side of the H3 minimal graph equation
///   f_xx (1 + Q^2) - 2 f_xy P Q + f_yy (1 + P^2).
double minimal_residual_h3(const Expr& f, double x, double y);
/// Left-hand side of the Euclidean minimal graph equation
///   f_xx (1 + f_y^2) - 2 f_x f_y f_xy + f_yy (1 + f_x^2).
double minimal_residual_e3(const Expr& f, double x, double y);

/// Covariant second derivatives nabla_{d_i} d_j r in frame components.
struct CovariantHessian {
  FrameVector uu;
  FrameVector uv;
  FrameVector vv;
};
CovariantHessian covariant_hessian(const Chart& chart, ParamPoint p);

}  // namespace h3surf
