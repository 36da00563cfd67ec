#pragma once

#include <array>
#include <functional>
#include <optional>
#include <vector>

#include "h3surf/chart.hpp"
#include "h3surf/jet.hpp"

namespace h3surf {

/// Rectangular sample grid in chart parameters plus the finite-difference step
/// used by the divergence-form Laplacian.
struct GridSpec {
  double u0 = -1.0;
  double u1 = 1.0;
  double v0 = -1.0;
  double v1 = 1.0;
  int nu = 11;
  int nv = 11;
  double h = 0.0;  // <= 0 selects default_step()

  double du() const { return (u1 - u0) / (nu - 1); }
  double dv() const { return (v1 - v0) / (nv - 1); }
  ParamPoint at(int i, int j) const;
  double diameter() const;
  /// 1e-3 * min(grid spacing, 1).
  double default_step() const;
  double step() const { return h > 0.0 ? h : default_step(); }
  std::size_t size() const { return static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv); }

  /// Throws InvalidArgument unless nu, nv >= 3, the ranges are ordered and the
  /// grid sits at least 2h inside the chart domain.
  void validate(const Chart& chart) const;
};

using ScalarField = std::function<Jet2(ParamPoint)>;

/// Global coordinate i (0, 1, 2) of the immersion as a scalar field.
ScalarField coordinate_field(const Chart& chart, int i);

/// Laplace-Beltrami operator of the induced metric, leading-minus convention:
///   -(1/W) [ ((G phi_u - F phi_v)/W)_u + ((-F phi_u + E phi_v)/W)_v ].
/// Fluxes come from jets; the outer derivatives are central differences with
/// step h. The stencil must sit 2h inside the chart domain.
double scalar_beltrami(const Chart& chart, const ScalarField& phi, ParamPoint p, double h);

/// scalar_beltrami applied to x, y, z of the immersion.
std::array<double, 3> beltrami_coords(const Chart& chart, ParamPoint p, double h);

/// Coordinate components (d/dx, d/dy, d/dz) of tension_field.
std::array<double, 3> tension_coords(const Chart& chart, ParamPoint p);

struct BeltramiIdentityReport {
  // |tension - 2 H N| in the frame metric.
  double tension_max = 0.0;
  double tension_rms = 0.0;
  // |beltrami_coords - coordinate components of 2 H N|, Euclidean in R^3.
  double coord_max = 0.0;
  double coord_rms = 0.0;
  double max_abs_H = 0.0;
  std::size_t points = 0;
};

BeltramiIdentityReport beltrami_identity_check(const Chart& chart, const GridSpec& grid);

enum class FiniteTypeClass { Minimal, OneType, MultiEigenvalue, NotFiniteType };

const char* finite_type_class_name(FiniteTypeClass c);

struct FiniteTypeOptions {
  // residual_i <= tol_eigen * (1 + |lambda_i|) means Lap r_i = lambda_i r_i holds
  double tol_eigen = 1e-5;
  // |lambda| at or below this counts as zero
  double tol_zero = 1e-8;
  // eigenvalues closer than tol_equal * (1 + |lambda|) are the same
  double tol_equal = 1e-6;
};

struct FiniteTypePoint {
  ParamPoint param;
  std::array<double, 3> r;
  std::array<double, 3> lap;
};

struct FiniteTypeReport {
  // Empty when every sample of r_i was excluded (r_i vanishes on the grid).
  std::array<std::optional<double>, 3> lambda;
  std::array<double, 3> residual{};  // RMS of Lap r_i - lambda_i r_i
  std::array<std::size_t, 3> used_points{};
  double eps_coord = 0.0;
  FiniteTypeClass classification = FiniteTypeClass::NotFiniteType;
  int distinct_eigenvalues = 0;
  std::vector<FiniteTypePoint> points;
};

/// Least-squares fit of Lap r_i = lambda_i r_i over the grid. Samples with
/// |r_i| <= 1e-6 (1 + grid diameter) are left out of the fit of lambda_i.
FiniteTypeReport finite_type_fit(const Chart& chart, const GridSpec& grid,
                                 const FiniteTypeOptions& options = {});

/// Same classification rule as finite_type_fit for given fitted values.
FiniteTypeClass classify_eigenvalues(const std::array<std::optional<double>, 3>& lambda,
                                     const std::array<double, 3>& residual,
                                     const FiniteTypeOptions& options, int* distinct = nullptr);

}  // namespace h3surf
