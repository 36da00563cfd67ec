#pragma once
// Ambient geometry computed straight from the coordinate metric, independent
// of the frame formulas in the library.

#include <array>

namespace oracle {

using Vec3 = std::array<double, 3>;
using Mat3 = std::array<Vec3, 3>;

// Coordinate metric of dx^2 + dy^2 + (dz + (y dx - x dy)/2)^2.
inline Mat3 coord_metric(const Vec3& p) {
  const double x = p[0], y = p[1];
  return {{{1 + y * y / 4, -x * y / 4, y / 2}, {-x * y / 4, 1 + x * x / 4, -x / 2}, {y / 2, -x / 2, 1}}};
}

inline Mat3 inverse(const Mat3& m) {
  Mat3 r{};
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int a = (j + 1) % 3, b = (j + 2) % 3, c = (i + 1) % 3, d = (i + 2) % 3;
      r[i][j] = (m[a][c] * m[b][d] - m[a][d] * m[b][c]) / det;
    }
  }
  return r;
}

inline double gdot(const Mat3& g, const Vec3& u, const Vec3& v) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += g[i][j] * u[i] * v[j];
  return s;
}

// Coordinate Christoffel symbols Gamma^k_ij from central differences of the metric.
inline std::array<Mat3, 3> christoffel(const Vec3& p) {
  const double h = 1e-5;
  std::array<Mat3, 3> dg{};
  for (int l = 0; l < 3; ++l) {
    Vec3 a = p, b = p;
    a[l] += h;
    b[l] -= h;
    const Mat3 ga = coord_metric(a), gb = coord_metric(b);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) dg[l][i][j] = (ga[i][j] - gb[i][j]) / (2 * h);
  }
  const Mat3 gi = inverse(coord_metric(p));
  std::array<Mat3, 3> G{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        double s = 0;
        for (int l = 0; l < 3; ++l) s += gi[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
        G[k][i][j] = s / 2;
      }
  return G;
}

}  // namespace oracle
