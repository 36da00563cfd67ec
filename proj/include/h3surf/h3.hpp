#pragma once

// Ambient geometry of the Heisenberg group H3 in global coordinates (x, y, z):
// metric dx^2 + dy^2 + w^2 with the Darboux form w = dz + (y dx - x dy) / 2,
// orthonormal frame e1 = dx - (y/2) dz, e2 = dy + (x/2) dz, e3 = dz.

#include <vector>

namespace h3surf {

struct CoordPoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Tangent vector in the coordinate basis d/dx, d/dy, d/dz.
struct CoordVector {
  double vx = 0.0;
  double vy = 0.0;
  double vz = 0.0;
};

/// Tangent vector in the left-invariant frame e1, e2, e3. Components only make
/// sense together with the base point they were computed at.
struct FrameVector {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  double norm() const;
  double norm2() const { return a1 * a1 + a2 * a2 + a3 * a3; }

  friend FrameVector operator+(const FrameVector& l, const FrameVector& r) {
    return {l.a1 + r.a1, l.a2 + r.a2, l.a3 + r.a3};
  }
  friend FrameVector operator-(const FrameVector& l, const FrameVector& r) {
    return {l.a1 - r.a1, l.a2 - r.a2, l.a3 - r.a3};
  }
  friend FrameVector operator*(double s, const FrameVector& v) {
    return {s * v.a1, s * v.a2, s * v.a3};
  }
};

double dot(const FrameVector& l, const FrameVector& r);
FrameVector cross(const FrameVector& l, const FrameVector& r);

/// Element (theta, a, b, c) of the identity component of the isometry group:
/// a rotation about the z axis followed by a translation.
struct Isometry {
  double theta = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
};

/// Group law (x,y,z)*(x',y',z') = (x+x', y+y', z+z' + (x'y - xy')/2).
CoordPoint group_mul(const CoordPoint& p, const CoordPoint& q);
CoordPoint group_inverse(const CoordPoint& p);

CoordVector frame_to_coord(const CoordPoint& p, const FrameVector& v);
FrameVector coord_to_frame(const CoordPoint& p, const CoordVector& v);

double darboux_omega(const CoordPoint& p, const CoordVector& v);
double metric_dot(const CoordPoint& p, const CoordVector& u, const CoordVector& v);

/// Levi-Civita connection on left-invariant fields: nabla_X Y for constant
/// frame coefficients X, Y.
FrameVector connection(const FrameVector& X, const FrameVector& Y);

/// Linear part of an isometry as a row-major 3x3 matrix.
struct Matrix3 {
  double m[3][3];
};
Matrix3 isometry_matrix(const Isometry& g);

CoordPoint isometry_apply(const Isometry& g, const CoordPoint& p);
/// Differential of the isometry (it is affine, so independent of the point).
CoordVector isometry_push(const Isometry& g, const CoordVector& v);
/// g2 after g1.
Isometry compose(const Isometry& g2, const Isometry& g1);

/// Translation q -> q * p under the group law above. With that law this is
/// the map that preserves the metric; it coincides with Isometry{0, p.x, p.y, p.z}.
CoordPoint translate(const CoordPoint& q, const CoordPoint& p);
CoordVector translate_push(const CoordPoint& p, const CoordVector& v);

struct LineGeodesicResult {
  bool is_geodesic = false;
  double accel_norm = 0.0;
};

/// Whether the Euclidean straight line s -> p + s v is a geodesic. The
/// covariant acceleration of the line is w (vy e1 - vx e2), w = omega(v),
/// constant along the line. Throws InvalidArgument for v = 0.
LineGeodesicResult line_is_geodesic(const CoordPoint& p, const CoordVector& v);

/// Geodesic from p with initial velocity v, classical RK4 in (position, frame
/// velocity) with `steps` equal steps on [0, s_max]. Returns steps + 1 points.
std::vector<CoordPoint> geodesic_integrate(const CoordPoint& p, const CoordVector& v,
                                           double s_max, int steps);

}  // namespace h3surf
