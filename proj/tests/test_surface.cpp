#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "h3surf/chart.hpp"
#include "h3surf/error.hpp"
#include "h3surf/expr.hpp"
#include "h3surf/surface.hpp"
#include "oracles.hpp"

using namespace h3surf;
using namespace oracle;

namespace {

struct Oracle {
  double E, F, G, H;
  Vec3 normal;  // coordinate components
};

// First fundamental form and mean curvature built only from coordinate
// derivatives of the immersion and the coordinate metric.
Oracle coordinate_oracle(const Chart& chart, ParamPoint pp) {
  const auto r = chart.position(pp);
  const Vec3 p{r[0].value, r[1].value, r[2].value};
  const Vec3 ru{r[0].d(0), r[1].d(0), r[2].d(0)};
  const Vec3 rv{r[0].d(1), r[1].d(1), r[2].d(1)};
  const Mat3 g = coord_metric(p);
  const auto Gm = christoffel(p);
  const auto cov = [&](int a, int b) {
    Vec3 out{};
    const Vec3& X = a == 0 ? ru : rv;
    const Vec3& Y = b == 0 ? ru : rv;
    for (int k = 0; k < 3; ++k) {
      double s = r[k].d2(a, b);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) s += Gm[k][i][j] * X[i] * Y[j];
      out[k] = s;
    }
    return out;
  };
  // The Euclidean cross product is a covector annihilating ru and rv.
  const Vec3 alpha{ru[1] * rv[2] - ru[2] * rv[1], ru[2] * rv[0] - ru[0] * rv[2],
                   ru[0] * rv[1] - ru[1] * rv[0]};
  const Mat3 gi = inverse(g);
  Vec3 n{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) n[i] += gi[i][j] * alpha[j];
  const double len = std::sqrt(gdot(g, n, n));
  for (double& c : n) c /= len;
  Oracle o{};
  o.E = gdot(g, ru, ru);
  o.F = gdot(g, ru, rv);
  o.G = gdot(g, rv, rv);
  o.normal = n;
  const double L = -gdot(g, cov(0, 0), n), M = -gdot(g, cov(0, 1), n), N = -gdot(g, cov(1, 1), n);
  o.H = (o.E * N - 2 * o.F * M + o.G * L) / (2 * (o.E * o.G - o.F * o.F));
  return o;
}

// Mean curvature of the oracle with its normal aligned to the library normal.
double oracle_H(const Chart& chart, ParamPoint pp) {
  const Oracle o = coordinate_oracle(chart, pp);
  const CoordPoint q = chart.point(pp);
  const CoordVector nl = frame_to_coord(q, unit_normal(chart, pp));
  const double s = metric_dot(q, nl, {o.normal[0], o.normal[1], o.normal[2]});
  return s > 0 ? o.H : -o.H;
}

}  // namespace

TEST(Surface, SaddleGraphHandValues) {
  const Chart c = Chart::graph(parse("x*y/2"));
  const SurfaceData d = surface_data(c, {1, 2});
  EXPECT_NEAR(d.first.E, 5.0, 1e-15);
  EXPECT_NEAR(d.first.F, 0.0, 1e-15);
  EXPECT_NEAR(d.first.G, 1.0, 1e-15);
  EXPECT_NEAR(d.first.W2, 5.0, 1e-15);
  EXPECT_NEAR(d.second.L, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.second.M), 3 / (2 * std::sqrt(5.0)), 1e-14);
  EXPECT_NEAR(d.second.N, 0.0, 1e-15);
  EXPECT_NEAR(d.H, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.normal.a1), 2 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(d.normal.a2, 0.0, 1e-15);
  EXPECT_NEAR(std::abs(d.normal.a3), 1 / std::sqrt(5.0), 1e-15);
  EXPECT_LT(d.normal.a1 * d.normal.a3, 0.0);
  // P = f_x + y/2 = y, Q = f_y - x/2 = 0.
  ASSERT_TRUE(d.P && d.Q);
  EXPECT_DOUBLE_EQ(*d.P, 2.0);
  EXPECT_DOUBLE_EQ(*d.Q, 0.0);
}

TEST(Surface, SaddleIsMinimalInH3ButNotInE3) {
  const Expr f = parse("x*y/2");
  for (double x : {-1.0, 0.3, 2.0})
    for (double y : {-0.5, 1.0}) EXPECT_NEAR(minimal_residual_h3(f, x, y), 0.0, 1e-15);
  // f_xx (1 + f_y^2) - 2 f_x f_y f_xy + f_yy (1 + f_x^2) at (1, 1).
  EXPECT_DOUBLE_EQ(minimal_residual_e3(f, 1, 1), -0.25);
}

TEST(Surface, CylinderClosedForm) {
  // a = sqrt(c - t^2), c = 4, at t = 1: a = sqrt 3 and W^2 = 4/3. The mean
  // curvature is -1/(2 sqrt c) and W H is -1/(2 a).
  const Chart c = Chart::ruled_s1(parse("sqrt(c - t^2)"), {-1.9, 1.9, -5, 5}).with_constant(4);
  for (double s : {-2.0, 0.0, 3.0}) {
    const SurfaceData d = surface_data(c, {1, s});
    EXPECT_NEAR(d.H, -0.25, 1e-14);
    EXPECT_NEAR(std::sqrt(d.first.W2) * d.H, -1 / (2 * std::sqrt(3.0)), 1e-14);
  }
}

TEST(Surface, RuledVerticalAtVertex) {
  const Chart c = Chart::ruled_s1(parse("t^2"));
  const SurfaceData d = surface_data(c, {0, 0.7});
  EXPECT_NEAR(d.first.E, 1.0, 1e-15);
  EXPECT_NEAR(d.first.F, 0.0, 1e-15);
  EXPECT_NEAR(d.first.G, 1.0, 1e-15);
  EXPECT_NEAR(std::abs(d.H), 1.0, 1e-14);
}

TEST(Surface, FirstFormMatchesCoordinateMetric) {
  const Chart charts[] = {
      Chart::graph(parse("sin(x)*y/3 + x^2/5")),
      Chart::parametric(parse("t*cos(s)"), parse("t*sin(s)"), parse("t^2/3 + s/2")),
      Chart::ruled_s1(parse("t^3 - t")),
      Chart::ruled_s2(parse("t^2/2"), parse("1 + t/3")),
  };
  for (const Chart& c : charts) {
    for (ParamPoint p : {ParamPoint{0.4, -0.3}, ParamPoint{1.2, 0.8}, ParamPoint{-0.7, 1.5}}) {
      const FirstForm I = first_form(c, p);
      const Oracle o = coordinate_oracle(c, p);
      EXPECT_NEAR(I.E, o.E, 1e-13 * (1 + o.E));
      EXPECT_NEAR(I.F, o.F, 1e-13 * (1 + std::abs(o.F)));
      EXPECT_NEAR(I.G, o.G, 1e-13 * (1 + o.G));
    }
  }
}

TEST(Surface, MeanCurvatureMatchesCoordinateOracle) {
  const Chart charts[] = {
      Chart::graph(parse("sin(x)*y/3 + x^2/5")),
      Chart::graph(parse("exp(x/2)*cos(y)")),
      Chart::parametric(parse("t*cos(s)"), parse("t*sin(s)"), parse("t^2/3 + s/2")),
      Chart::ruled_s1(parse("t^3 - t")),
      Chart::ruled_s2(parse("t^2/2"), parse("1 + t/3")),
  };
  for (const Chart& c : charts) {
    for (ParamPoint p : {ParamPoint{0.4, -0.3}, ParamPoint{1.2, 0.8}, ParamPoint{-0.7, 1.5}}) {
      const double H = mean_curvature(c, p);
      EXPECT_NEAR(H, oracle_H(c, p), 1e-8 * (1 + std::abs(H)));
    }
  }
}

TEST(Surface, ShapeOperatorTraceIsTwiceMeanCurvature) {
  const Chart c = Chart::parametric(parse("t*cos(s)"), parse("t*sin(s)"), parse("t^2/3 + s/2"));
  for (ParamPoint p : {ParamPoint{0.5, 0.1}, ParamPoint{1.5, -2.0}}) {
    EXPECT_NEAR(shape_operator(c, p).trace(), 2 * mean_curvature(c, p), 1e-13);
  }
}

TEST(Surface, GraphFormulaAgreesWithPipeline) {
  const Chart c = Chart::graph(parse("exp(x/2)*cos(y) - x*y/4"));
  for (ParamPoint p : {ParamPoint{0.2, 0.3}, ParamPoint{-1.0, 0.9}}) {
    const SurfaceData d = surface_data(c, p);
    ASSERT_TRUE(d.H_graph);
    EXPECT_NEAR(*d.H_graph, d.H, 1e-13);
  }
}

TEST(Surface, MeanCurvatureIsIsometryInvariant) {
  const Chart base = Chart::graph(parse("sin(x)*y/3 + x^2/5"));
  const Isometry g{0.7, 1.5, -2.0, 0.3};
  const Chart moved = base.transformed(g);
  EXPECT_FALSE(moved.is_plain_graph());
  for (ParamPoint p : {ParamPoint{0.4, -0.3}, ParamPoint{1.2, 0.8}}) {
    const FirstForm a = first_form(base, p), b = first_form(moved, p);
    EXPECT_NEAR(a.E, b.E, 1e-12);
    EXPECT_NEAR(a.F, b.F, 1e-12);
    EXPECT_NEAR(a.G, b.G, 1e-12);
    EXPECT_NEAR(mean_curvature(base, p), mean_curvature(moved, p), 1e-12);
  }
}

TEST(Surface, OrientationFlipsMeanCurvature) {
  const Chart c = Chart::ruled_s1(parse("t^3 - t"));
  const Chart f = c.with_orientation(-1);
  EXPECT_NEAR(mean_curvature(c, {0.6, 0.2}), -mean_curvature(f, {0.6, 0.2}), 1e-15);
}

TEST(Surface, DegenerateChartRaises) {
  const Chart c = Chart::parametric(parse("t + s"), parse("t + s"), parse("0"));
  EXPECT_THROW(mean_curvature(c, {0.3, 0.4}), DegenerateChartError);
  EXPECT_THROW(unit_normal(c, {0.3, 0.4}), DegenerateChartError);
}

TEST(Surface, TensionFieldEqualsTwiceMeanCurvatureNormal) {
  const Chart charts[] = {
      Chart::graph(parse("sin(x)*y/3 + x^2/5")),
      Chart::parametric(parse("t*cos(s)"), parse("t*sin(s)"), parse("t^2/3 + s/2")),
      Chart::ruled_s1(parse("sqrt(c - t^2)"), {-1.9, 1.9, -5, 5}).with_constant(4),
  };
  for (const Chart& c : charts) {
    for (ParamPoint p : {ParamPoint{0.5, -0.3}, ParamPoint{1.2, 0.8}}) {
      const SurfaceData d = surface_data(c, p);
      const FrameVector tau = tension_field(c, p);
      const FrameVector expect = (2 * d.H) * d.normal;
      EXPECT_LT((tau - expect).norm(), 1e-8) << chart_kind_name(c.kind());
    }
  }
}

TEST(Surface, TensionStencilNeedsRoom) {
  const Chart c = Chart::graph(parse("x*y"), {0, 1, 0, 1});
  EXPECT_THROW(tension_field(c, {0.0, 0.5}, 1e-3), StencilError);
  EXPECT_NO_THROW(tension_field(c, {0.5, 0.5}, 1e-3));
}
