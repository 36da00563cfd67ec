#include "h3surf/laplace.hpp"

#include <algorithm>
#include <cmath>

#include "h3surf/error.hpp"
#include "h3surf/surface.hpp"

namespace h3surf {

ParamPoint GridSpec::at(int i, int j) const {
  // Endpoints are hit exactly.
  const double u = i == nu - 1 ? u1 : u0 + i * du();
  const double v = j == nv - 1 ? v1 : v0 + j * dv();
  return {u, v};
}

double GridSpec::diameter() const { return std::hypot(u1 - u0, v1 - v0); }

double GridSpec::default_step() const { return 1e-3 * std::min({du(), dv(), 1.0}); }

void GridSpec::validate(const Chart& chart) const {
  if (nu < 3 || nv < 3) throw InvalidArgument("grid needs at least 3x3 samples");
  if (!(u1 > u0) || !(v1 > v0)) throw InvalidArgument("grid ranges must be increasing");
  if (!std::isfinite(u0) || !std::isfinite(u1) || !std::isfinite(v0) || !std::isfinite(v1)) {
    throw InvalidArgument("grid ranges must be finite");
  }
  const double margin = 2.0 * step();
  if (!chart.domain().contains({u0, v0}, margin) || !chart.domain().contains({u1, v1}, margin)) {
    throw InvalidArgument("grid must lie at least 2h inside the chart domain");
  }
}

ScalarField coordinate_field(const Chart& chart, int i) {
  if (i < 0 || i > 2) throw InvalidArgument("coordinate index must be 0, 1 or 2");
  return [chart, i](ParamPoint p) { return chart.position(p)[static_cast<std::size_t>(i)]; };
}

namespace {

struct Flux {
  double fu;  // (G phi_u - F phi_v) / W
  double fv;  // (-F phi_u + E phi_v) / W
  double W;
};

Flux flux_at(const Chart& chart, const ScalarField& phi, ParamPoint p) {
  const FirstForm I = first_form(chart, p);
  const Jet2 f = phi(p);
  const double W = std::sqrt(I.W2);
  return {(I.G * f.d(0) - I.F * f.d(1)) / W, (-I.F * f.d(0) + I.E * f.d(1)) / W, W};
}

}  // namespace

double scalar_beltrami(const Chart& chart, const ScalarField& phi, ParamPoint p, double h) {
  if (!(h > 0.0) || p.u + h == p.u || p.v + h == p.v) {
    throw StencilError("scalar_beltrami: step must be positive and resolvable");
  }
  if (!chart.domain().contains(p, 2.0 * h)) {
    throw StencilError("scalar_beltrami: stencil leaves the chart domain");
  }
  const double W = std::sqrt(first_form(chart, p).W2);
  const Flux up = flux_at(chart, phi, {p.u + h, p.v});
  const Flux um = flux_at(chart, phi, {p.u - h, p.v});
  const Flux vp = flux_at(chart, phi, {p.u, p.v + h});
  const Flux vm = flux_at(chart, phi, {p.u, p.v - h});
  const double div = (up.fu - um.fu) / (2.0 * h) + (vp.fv - vm.fv) / (2.0 * h);
  return -div / W;
}

std::array<double, 3> beltrami_coords(const Chart& chart, ParamPoint p, double h) {
  std::array<double, 3> out{};
  for (int i = 0; i < 3; ++i) out[i] = scalar_beltrami(chart, coordinate_field(chart, i), p, h);
  return out;
}

std::array<double, 3> tension_coords(const Chart& chart, ParamPoint p) {
  const CoordVector c = frame_to_coord(chart.point(p), tension_field(chart, p));
  return {c.vx, c.vy, c.vz};
}

BeltramiIdentityReport beltrami_identity_check(const Chart& chart, const GridSpec& grid) {
  grid.validate(chart);
  const double h = grid.step();
  BeltramiIdentityReport rep;
  double tension_sq = 0.0;
  double coord_sq = 0.0;
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint p = grid.at(i, j);
      const SurfaceData d = surface_data(chart, p);
      const FrameVector expected = (2.0 * d.H) * d.normal;
      const double dt = (tension_field(chart, p) - expected).norm();

      const CoordVector ec = frame_to_coord(d.point, expected);
      const auto lap = beltrami_coords(chart, p, h);
      const double dc = std::sqrt((lap[0] - ec.vx) * (lap[0] - ec.vx) +
                                  (lap[1] - ec.vy) * (lap[1] - ec.vy) +
                                  (lap[2] - ec.vz) * (lap[2] - ec.vz));
      rep.tension_max = std::max(rep.tension_max, dt);
      rep.coord_max = std::max(rep.coord_max, dc);
      rep.max_abs_H = std::max(rep.max_abs_H, std::abs(d.H));
      tension_sq += dt * dt;
      coord_sq += dc * dc;
      ++rep.points;
    }
  }
  rep.tension_rms = std::sqrt(tension_sq / static_cast<double>(rep.points));
  rep.coord_rms = std::sqrt(coord_sq / static_cast<double>(rep.points));
  return rep;
}

const char* finite_type_class_name(FiniteTypeClass c) {
  switch (c) {
    case FiniteTypeClass::Minimal:
      return "minimal";
    case FiniteTypeClass::OneType:
      return "one-type";
    case FiniteTypeClass::MultiEigenvalue:
      return "multi-eigenvalue";
    case FiniteTypeClass::NotFiniteType:
      return "not-finite-type";
  }
  return "?";
}

FiniteTypeClass classify_eigenvalues(const std::array<std::optional<double>, 3>& lambda,
                                     const std::array<double, 3>& residual,
                                     const FiniteTypeOptions& options, int* distinct) {
  std::vector<double> values;
  bool holds = true;
  for (int i = 0; i < 3; ++i) {
    const double l = lambda[i].value_or(0.0);
    if (!(residual[i] <= options.tol_eigen * (1.0 + std::abs(l)))) holds = false;
    if (lambda[i]) values.push_back(std::abs(l) <= options.tol_zero ? 0.0 : l);
  }
  std::vector<double> unique;
  for (double v : values) {
    const bool seen = std::any_of(unique.begin(), unique.end(), [&](double u) {
      return std::abs(u - v) <= options.tol_equal * (1.0 + std::max(std::abs(u), std::abs(v)));
    });
    if (!seen) unique.push_back(v);
  }
  if (distinct) *distinct = static_cast<int>(unique.size());
  if (!holds) return FiniteTypeClass::NotFiniteType;
  if (std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; })) {
    return FiniteTypeClass::Minimal;
  }
  if (unique.size() == 1) return FiniteTypeClass::OneType;
  return FiniteTypeClass::MultiEigenvalue;
}

FiniteTypeReport finite_type_fit(const Chart& chart, const GridSpec& grid,
                                 const FiniteTypeOptions& options) {
  grid.validate(chart);
  const double h = grid.step();
  FiniteTypeReport rep;
  rep.eps_coord = 1e-6 * (1.0 + grid.diameter());
  rep.points.reserve(grid.size());
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint p = grid.at(i, j);
      const CoordPoint r = chart.point(p);
      rep.points.push_back({p, {r.x, r.y, r.z}, beltrami_coords(chart, p, h)});
    }
  }
  // Fixed summation order keeps reports reproducible.
  for (int k = 0; k < 3; ++k) {
    double num = 0.0;
    double den = 0.0;
    std::size_t used = 0;
    for (const auto& pt : rep.points) {
      if (std::abs(pt.r[k]) > rep.eps_coord) {
        num += pt.lap[k] * pt.r[k];
        den += pt.r[k] * pt.r[k];
        ++used;
      }
    }
    rep.used_points[k] = used;
    if (used > 0) rep.lambda[k] = num / den;
    const double l = rep.lambda[k].value_or(0.0);
    double sq = 0.0;
    for (const auto& pt : rep.points) {
      const double e = pt.lap[k] - l * pt.r[k];
      sq += e * e;
    }
    rep.residual[k] = std::sqrt(sq / static_cast<double>(rep.points.size()));
  }
  rep.classification =
      classify_eigenvalues(rep.lambda, rep.residual, options, &rep.distinct_eigenvalues);
  return rep;
}

}  // namespace h3surf
