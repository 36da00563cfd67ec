#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "h3surf/expr.hpp"
#include "h3surf/h3.hpp"
#include "h3surf/jet.hpp"

namespace h3surf {

struct ParamPoint {
  double u = 0.0;
  double v = 0.0;
};

/// Closed parameter rectangle; unbounded by default.
struct ParamRect {
  double u0 = -std::numeric_limits<double>::infinity();
  double u1 = std::numeric_limits<double>::infinity();
  double v0 = -std::numeric_limits<double>::infinity();
  double v1 = std::numeric_limits<double>::infinity();

  /// True when p lies inside with at least `margin` to every edge.
  bool contains(ParamPoint p, double margin = 0.0) const {
    return p.u - margin >= u0 && p.u + margin <= u1 && p.v - margin >= v0 &&
           p.v + margin <= v1;
  }
};

enum class ChartKind { Graph, Parametric, RuledS1, RuledS2 };

const char* chart_kind_name(ChartKind k);

/// Immersion (u, v) -> H3 given by expressions. Graph charts use parameters
/// (x, y) and the position (x, y, f); every other kind uses (t, s):
///   parametric: (x(t,s), y(t,s), z(t,s))
///   ruled S1:   (t, a(t), s)                       vertical rulings
///   ruled S2:   (t + s u(t), s, a(t) + t s / 2)    rulings in ker omega
class Chart {
 public:
  static Chart graph(Expr f, ParamRect domain = {});
  static Chart parametric(Expr x, Expr y, Expr z, ParamRect domain = {});
  static Chart ruled_s1(Expr a, ParamRect domain = {});
  static Chart ruled_s2(Expr a, Expr u, ParamRect domain = {});

  /// Binds the named constant `c` used by the expressions.
  Chart with_constant(double c) const;
  /// Same chart followed by the isometry g (composed with any earlier one).
  Chart transformed(const Isometry& g) const;
  Chart with_domain(ParamRect domain) const;
  Chart with_orientation(int sign) const;

  /// Coordinates (x, y, z) as jets in the chart parameters.
  std::array<Jet2, 3> position(ParamPoint p) const;
  CoordPoint point(ParamPoint p) const;

  ChartKind kind() const { return kind_; }
  /// A graph chart not moved by an isometry, so f_x, f_y, P, Q are meaningful.
  bool is_plain_graph() const { return kind_ == ChartKind::Graph && !isometry_; }
  /// +1 when the unit normal points along r_u x r_v, -1 along r_v x r_u.
  int orientation() const { return orientation_; }
  const ParamRect& domain() const { return domain_; }
  const std::vector<Expr>& expressions() const { return exprs_; }
  std::optional<double> constant() const { return constant_; }
  const std::optional<Isometry>& isometry() const { return isometry_; }
  const char* u_name() const;
  const char* v_name() const;

  Bindings bindings(ParamPoint p) const;

 private:
  Chart(ChartKind kind, std::vector<Expr> exprs, ParamRect domain, int orientation);

  ChartKind kind_;
  std::vector<Expr> exprs_;
  ParamRect domain_;
  int orientation_;
  std::optional<double> constant_;
  std::optional<Isometry> isometry_;
};

}  // namespace h3surf
