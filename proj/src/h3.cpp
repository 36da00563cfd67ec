#include "h3surf/h3.hpp"

#include <cmath>

#include "h3surf/error.hpp"

namespace h3surf {

double FrameVector::norm() const { return std::sqrt(norm2()); }

double dot(const FrameVector& l, const FrameVector& r) {
  return l.a1 * r.a1 + l.a2 * r.a2 + l.a3 * r.a3;
}

FrameVector cross(const FrameVector& l, const FrameVector& r) {
  return {l.a2 * r.a3 - l.a3 * r.a2, l.a3 * r.a1 - l.a1 * r.a3, l.a1 * r.a2 - l.a2 * r.a1};
}

CoordPoint group_mul(const CoordPoint& p, const CoordPoint& q) {
  return {p.x + q.x, p.y + q.y, p.z + q.z + 0.5 * (q.x * p.y - p.x * q.y)};
}

CoordPoint group_inverse(const CoordPoint& p) { return {-p.x, -p.y, -p.z}; }

CoordVector frame_to_coord(const CoordPoint& p, const FrameVector& v) {
  return {v.a1, v.a2, v.a3 - 0.5 * (p.y * v.a1 - p.x * v.a2)};
}

FrameVector coord_to_frame(const CoordPoint& p, const CoordVector& v) {
  return {v.vx, v.vy, darboux_omega(p, v)};
}

double darboux_omega(const CoordPoint& p, const CoordVector& v) {
  return v.vz + 0.5 * (p.y * v.vx - p.x * v.vy);
}

double metric_dot(const CoordPoint& p, const CoordVector& u, const CoordVector& v) {
  return dot(coord_to_frame(p, u), coord_to_frame(p, v));
}

FrameVector connection(const FrameVector& X, const FrameVector& Y) {
  // Bilinear extension of
  //   n_{e1}e2 =  e3/2, n_{e1}e3 = -e2/2, n_{e2}e1 = -e3/2,
  //   n_{e2}e3 =  e1/2, n_{e3}e1 = -e2/2, n_{e3}e2 =  e1/2.
  return {0.5 * (X.a2 * Y.a3 + X.a3 * Y.a2), -0.5 * (X.a1 * Y.a3 + X.a3 * Y.a1),
          0.5 * (X.a1 * Y.a2 - X.a2 * Y.a1)};
}

Matrix3 isometry_matrix(const Isometry& g) {
  const double c = std::cos(g.theta);
  const double s = std::sin(g.theta);
  const double A = 0.5 * (g.a * s - g.b * c);
  const double B = 0.5 * (g.a * c + g.b * s);
  return {{{c, -s, 0.0}, {s, c, 0.0}, {A, B, 1.0}}};
}

CoordPoint isometry_apply(const Isometry& g, const CoordPoint& p) {
  const CoordVector v = isometry_push(g, {p.x, p.y, p.z});
  return {v.vx + g.a, v.vy + g.b, v.vz + g.c};
}

CoordVector isometry_push(const Isometry& g, const CoordVector& v) {
  const Matrix3 m = isometry_matrix(g);
  return {m.m[0][0] * v.vx + m.m[0][1] * v.vy + m.m[0][2] * v.vz,
          m.m[1][0] * v.vx + m.m[1][1] * v.vy + m.m[1][2] * v.vz,
          m.m[2][0] * v.vx + m.m[2][1] * v.vy + m.m[2][2] * v.vz};
}

Isometry compose(const Isometry& g2, const Isometry& g1) {
  // Rotations add; the translation part is the image of the origin.
  const CoordPoint origin_image = isometry_apply(g2, isometry_apply(g1, {}));
  return {g1.theta + g2.theta, origin_image.x, origin_image.y, origin_image.z};
}

CoordPoint translate(const CoordPoint& q, const CoordPoint& p) { return group_mul(q, p); }

CoordVector translate_push(const CoordPoint& p, const CoordVector& v) {
  return {v.vx, v.vy, v.vz + 0.5 * (p.x * v.vy - p.y * v.vx)};
}

LineGeodesicResult line_is_geodesic(const CoordPoint& p, const CoordVector& v) {
  if (v.vx == 0.0 && v.vy == 0.0 && v.vz == 0.0) {
    throw InvalidArgument("line_is_geodesic: zero direction vector");
  }
  const double w = darboux_omega(p, v);
  const bool vertical = v.vx == 0.0 && v.vy == 0.0;
  LineGeodesicResult r;
  r.is_geodesic = vertical || w == 0.0;
  r.accel_norm = r.is_geodesic ? 0.0 : std::abs(w) * std::hypot(v.vx, v.vy);
  return r;
}

namespace {

struct GeodesicState {
  CoordPoint p;
  FrameVector a;
};

GeodesicState geodesic_rhs(const GeodesicState& st) {
  const CoordVector dp = frame_to_coord(st.p, st.a);
  // Frame coefficients obey a' = -nabla_a a.
  const FrameVector acc = connection(st.a, st.a);
  return {{dp.vx, dp.vy, dp.vz}, -1.0 * acc};
}

GeodesicState axpy(const GeodesicState& s, double h, const GeodesicState& k) {
  return {{s.p.x + h * k.p.x, s.p.y + h * k.p.y, s.p.z + h * k.p.z}, s.a + h * k.a};
}

bool finite(const GeodesicState& s) {
  return std::isfinite(s.p.x) && std::isfinite(s.p.y) && std::isfinite(s.p.z) &&
         std::isfinite(s.a.a1) && std::isfinite(s.a.a2) && std::isfinite(s.a.a3);
}

}  // namespace

std::vector<CoordPoint> geodesic_integrate(const CoordPoint& p, const CoordVector& v,
                                           double s_max, int steps) {
  if (steps < 2) throw InvalidArgument("geodesic_integrate: need at least 2 steps");
  if (!std::isfinite(s_max)) throw InvalidArgument("geodesic_integrate: s_max not finite");
  const double h = s_max / steps;
  GeodesicState st{p, coord_to_frame(p, v)};
  std::vector<CoordPoint> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  out.push_back(st.p);
  for (int i = 0; i < steps; ++i) {
    const GeodesicState k1 = geodesic_rhs(st);
    const GeodesicState k2 = geodesic_rhs(axpy(st, 0.5 * h, k1));
    const GeodesicState k3 = geodesic_rhs(axpy(st, 0.5 * h, k2));
    const GeodesicState k4 = geodesic_rhs(axpy(st, h, k3));
    st.p.x += h / 6.0 * (k1.p.x + 2.0 * k2.p.x + 2.0 * k3.p.x + k4.p.x);
    st.p.y += h / 6.0 * (k1.p.y + 2.0 * k2.p.y + 2.0 * k3.p.y + k4.p.y);
    st.p.z += h / 6.0 * (k1.p.z + 2.0 * k2.p.z + 2.0 * k3.p.z + k4.p.z);
    st.a = st.a + (h / 6.0) * (k1.a + 2.0 * k2.a + 2.0 * k3.a + k4.a);
    if (!finite(st)) {
      throw NumericalError("geodesic_integrate: non-finite state at step " +
                           std::to_string(i + 1));
    }
    out.push_back(st.p);
  }
  return out;
}

}  // namespace h3surf
