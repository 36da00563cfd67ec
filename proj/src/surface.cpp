#include "h3surf/surface.hpp"

#include <cmath>
#include <string>

#include "h3surf/error.hpp"

namespace h3surf {

namespace {

struct Local {
  std::array<Jet2, 3> r;
  CoordPoint point;
  FrameVector A[2];  // frame components of r_u, r_v
};

Local local(const Chart& chart, ParamPoint p) {
  Local loc;
  loc.r = chart.position(p);
  const auto& [X, Y, Z] = loc.r;
  loc.point = {X.value, Y.value, Z.value};
  for (int i = 0; i < 2; ++i) {
    loc.A[i] = coord_to_frame(loc.point, {X.d(i), Y.d(i), Z.d(i)});
  }
  return loc;
}

// Derivative along parameter j of the frame components of r_i.
FrameVector frame_component_derivative(const Local& loc, int i, int j) {
  const auto& [X, Y, Z] = loc.r;
  return {X.d2(i, j), Y.d2(i, j),
          Z.d2(i, j) + 0.5 * (Y.d(j) * X.d(i) + Y.value * X.d2(i, j) - X.d(j) * Y.d(i) -
                              X.value * Y.d2(i, j))};
}

FrameVector covariant(const Local& loc, int j, int i) {
  return frame_component_derivative(loc, i, j) + connection(loc.A[j], loc.A[i]);
}

FirstForm first_from(const Local& loc) {
  FirstForm I;
  I.E = dot(loc.A[0], loc.A[0]);
  I.F = dot(loc.A[0], loc.A[1]);
  I.G = dot(loc.A[1], loc.A[1]);
  I.W2 = I.E * I.G - I.F * I.F;
  return I;
}

void require_regular(const FirstForm& I, ParamPoint p) {
  if (!(I.W2 > kDegenerateW2)) {
    throw DegenerateChartError("degenerate chart at (" + std::to_string(p.u) + ", " +
                               std::to_string(p.v) + "): EG - F^2 = " + std::to_string(I.W2));
  }
}

FrameVector normal_from(const Chart& chart, const Local& loc) {
  const FrameVector n = chart.orientation() > 0 ? cross(loc.A[0], loc.A[1])
                                                : cross(loc.A[1], loc.A[0]);
  return (1.0 / n.norm()) * n;
}

struct Pointwise {
  Local loc;
  FirstForm first;
  FrameVector normal;
  SecondForm second;
  double H = 0.0;
};

Pointwise pointwise(const Chart& chart, ParamPoint p) {
  Pointwise pw;
  pw.loc = local(chart, p);
  pw.first = first_from(pw.loc);
  require_regular(pw.first, p);
  pw.normal = normal_from(chart, pw.loc);
  pw.second.L = -dot(covariant(pw.loc, 0, 0), pw.normal);
  pw.second.M = -dot(covariant(pw.loc, 0, 1), pw.normal);
  pw.second.N = -dot(covariant(pw.loc, 1, 1), pw.normal);
  const FirstForm& I = pw.first;
  const SecondForm& II = pw.second;
  pw.H = (I.E * II.N - 2.0 * I.F * II.M + I.G * II.L) / (2.0 * I.W2);
  return pw;
}

struct GraphTerms {
  double P, Q, H;
};

GraphTerms graph_terms(const Local& loc) {
  const Jet2& f = loc.r[2];
  const double x = loc.point.x;
  const double y = loc.point.y;
  const double P = f.d(0) + 0.5 * y;
  const double Q = f.d(1) - 0.5 * x;
  const double W = std::sqrt(1.0 + P * P + Q * Q);
  const double numerator =
      f.d2(0, 0) * (1.0 + Q * Q) - 2.0 * f.d2(0, 1) * P * Q + f.d2(1, 1) * (1.0 + P * P);
  return {P, Q, numerator / (2.0 * W * W * W)};
}

}  // namespace

CovariantHessian covariant_hessian(const Chart& chart, ParamPoint p) {
  const Local loc = local(chart, p);
  return {covariant(loc, 0, 0), covariant(loc, 0, 1), covariant(loc, 1, 1)};
}

TangentBasis tangent_basis(const Chart& chart, ParamPoint p) {
  const Local loc = local(chart, p);
  return {loc.A[0], loc.A[1]};
}

FirstForm first_form(const Chart& chart, ParamPoint p) {
  const FirstForm I = first_from(local(chart, p));
  require_regular(I, p);
  return I;
}

FrameVector unit_normal(const Chart& chart, ParamPoint p) { return pointwise(chart, p).normal; }

SecondForm second_form(const Chart& chart, ParamPoint p) { return pointwise(chart, p).second; }

double mean_curvature(const Chart& chart, ParamPoint p) {
  const Pointwise pw = pointwise(chart, p);
  if (chart.is_plain_graph()) {
    const GraphTerms g = graph_terms(pw.loc);
    if (std::abs(g.H - pw.H) > 1e-9 * std::max(1.0, std::abs(pw.H))) {
      throw NumericalError("mean curvature: general and graph forms disagree (" +
                           std::to_string(pw.H) + " vs " + std::to_string(g.H) + ")");
    }
  }
  return pw.H;
}

Mat2 shape_operator(const Chart& chart, ParamPoint p) {
  const Pointwise pw = pointwise(chart, p);
  const FirstForm& I = pw.first;
  const SecondForm& II = pw.second;
  const double inv = 1.0 / I.W2;
  // [G -F; -F E] / W2 times [L M; M N]
  return {inv * (I.G * II.L - I.F * II.M), inv * (I.G * II.M - I.F * II.N),
          inv * (-I.F * II.L + I.E * II.M), inv * (-I.F * II.M + I.E * II.N)};
}

SurfaceData surface_data(const Chart& chart, ParamPoint p) {
  const Pointwise pw = pointwise(chart, p);
  SurfaceData d;
  d.param = p;
  d.point = pw.loc.point;
  d.basis = {pw.loc.A[0], pw.loc.A[1]};
  d.first = pw.first;
  d.second = pw.second;
  d.normal = pw.normal;
  d.H = pw.H;
  if (chart.is_plain_graph()) {
    const GraphTerms g = graph_terms(pw.loc);
    d.P = g.P;
    d.Q = g.Q;
    d.H_graph = g.H;
  }
  return d;
}

double default_christoffel_step(ParamPoint p) { return 1e-4 * (1.0 + std::hypot(p.u, p.v)); }

FrameVector tension_field(const Chart& chart, ParamPoint p, double h) {
  if (h <= 0.0) h = default_christoffel_step(p);
  if (p.u + h == p.u || p.v + h == p.v) {
    throw StencilError("tension_field: finite-difference step underflows at this point");
  }
  if (!chart.domain().contains(p, 2.0 * h)) {
    throw StencilError("tension_field: Christoffel stencil leaves the chart domain");
  }
  const Local loc = local(chart, p);
  const FirstForm I = first_from(loc);
  require_regular(I, p);

  // dg[k][a][b] = d/d(param k) of g_ab, fourth-order central differences.
  double dg[2][2][2];
  for (int k = 0; k < 2; ++k) {
    const auto at = [&](double m) {
      return first_form(chart, {p.u + (k == 0 ? m * h : 0.0), p.v + (k == 1 ? m * h : 0.0)});
    };
    const FirstForm I2p = at(2.0), I1p = at(1.0), I1m = at(-1.0), I2m = at(-2.0);
    const auto d = [&](double FirstForm::*c) {
      return (-(I2p.*c) + 8.0 * (I1p.*c) - 8.0 * (I1m.*c) + (I2m.*c)) / (12.0 * h);
    };
    dg[k][0][0] = d(&FirstForm::E);
    dg[k][0][1] = dg[k][1][0] = d(&FirstForm::F);
    dg[k][1][1] = d(&FirstForm::G);
  }
  const double ginv[2][2] = {{I.G / I.W2, -I.F / I.W2}, {-I.F / I.W2, I.E / I.W2}};

  FrameVector acc;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      FrameVector term = covariant(loc, i, j);
      for (int k = 0; k < 2; ++k) {
        double gamma = 0.0;
        for (int l = 0; l < 2; ++l) {
          gamma += ginv[k][l] * 0.5 * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        }
        term = term - gamma * loc.A[k];
      }
      acc = acc + ginv[i][j] * term;
    }
  }
  return -1.0 * acc;
}

namespace {

struct GraphDerivs {
  double fx, fy, fxx, fxy, fyy;
};

GraphDerivs graph_derivs(const Expr& f, double x, double y) {
  const Jet2 j = eval_jet2(f, {{Var::X, Jet2::variable(x, 0)}, {Var::Y, Jet2::variable(y, 1)}});
  return {j.d(0), j.d(1), j.d2(0, 0), j.d2(0, 1), j.d2(1, 1)};
}

}  // namespace

double minimal_residual_h3(const Expr& f, double x, double y) {
  const GraphDerivs d = graph_derivs(f, x, y);
  const double P = d.fx + 0.5 * y;
  const double Q = d.fy - 0.5 * x;
  return d.fxx * (1.0 + Q * Q) - 2.0 * d.fxy * P * Q + d.fyy * (1.0 + P * P);
}

double minimal_residual_e3(const Expr& f, double x, double y) {
  const GraphDerivs d = graph_derivs(f, x, y);
  return d.fxx * (1.0 + d.fy * d.fy) - 2.0 * d.fx * d.fy * d.fxy +
         d.fyy * (1.0 + d.fx * d.fx);
}

}  // namespace h3surf
