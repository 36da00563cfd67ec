#include "h3surf/chart.hpp"

#include <cmath>

#include "h3surf/error.hpp"

namespace h3surf {

const char* chart_kind_name(ChartKind k) {
  switch (k) {
    case ChartKind::Graph:
      return "graph";
    case ChartKind::Parametric:
      return "parametric";
    case ChartKind::RuledS1:
      return "s1";
    case ChartKind::RuledS2:
      return "s2";
  }
  return "?";
}

Chart::Chart(ChartKind kind, std::vector<Expr> exprs, ParamRect domain, int orientation)
    : kind_(kind), exprs_(std::move(exprs)), domain_(domain), orientation_(orientation) {
  for (const Expr& e : exprs_) {
    if (!e.valid()) throw InvalidArgument("chart: empty expression");
  }
}

// Graphs are oriented by (P, Q, -1) / W, i.e. along r_y x r_x; charts that
// are locally graphs over (x, y) with positive Jacobian use the same rule.
// S1 is not a graph over (x, y) and is oriented along r_t x r_s.
Chart Chart::graph(Expr f, ParamRect domain) {
  return Chart(ChartKind::Graph, {std::move(f)}, domain, -1);
}

Chart Chart::parametric(Expr x, Expr y, Expr z, ParamRect domain) {
  return Chart(ChartKind::Parametric, {std::move(x), std::move(y), std::move(z)}, domain, -1);
}

Chart Chart::ruled_s1(Expr a, ParamRect domain) {
  return Chart(ChartKind::RuledS1, {std::move(a)}, domain, +1);
}

Chart Chart::ruled_s2(Expr a, Expr u, ParamRect domain) {
  return Chart(ChartKind::RuledS2, {std::move(a), std::move(u)}, domain, -1);
}

Chart Chart::with_constant(double c) const {
  Chart out = *this;
  out.constant_ = c;
  return out;
}

Chart Chart::transformed(const Isometry& g) const {
  Chart out = *this;
  out.isometry_ = isometry_ ? compose(g, *isometry_) : g;
  return out;
}

Chart Chart::with_domain(ParamRect domain) const {
  Chart out = *this;
  out.domain_ = domain;
  return out;
}

Chart Chart::with_orientation(int sign) const {
  if (sign != 1 && sign != -1) throw InvalidArgument("chart orientation must be +1 or -1");
  Chart out = *this;
  out.orientation_ = sign;
  return out;
}

const char* Chart::u_name() const { return kind_ == ChartKind::Graph ? "x" : "t"; }
const char* Chart::v_name() const { return kind_ == ChartKind::Graph ? "y" : "s"; }

Bindings Chart::bindings(ParamPoint p) const {
  Bindings b;
  if (kind_ == ChartKind::Graph) {
    b[Var::X] = Jet2::variable(p.u, 0);
    b[Var::Y] = Jet2::variable(p.v, 1);
  } else {
    b[Var::T] = Jet2::variable(p.u, 0);
    b[Var::S] = Jet2::variable(p.v, 1);
  }
  if (constant_) b[Var::C] = Jet2::constant(*constant_);
  return b;
}

std::array<Jet2, 3> Chart::position(ParamPoint p) const {
  const Bindings b = bindings(p);
  std::array<Jet2, 3> r;
  switch (kind_) {
    case ChartKind::Graph:
      r = {b.at(Var::X), b.at(Var::Y), eval_jet2(exprs_[0], b)};
      break;
    case ChartKind::Parametric:
      r = {eval_jet2(exprs_[0], b), eval_jet2(exprs_[1], b), eval_jet2(exprs_[2], b)};
      break;
    case ChartKind::RuledS1:
      r = {b.at(Var::T), eval_jet2(exprs_[0], b), b.at(Var::S)};
      break;
    case ChartKind::RuledS2: {
      const Jet2& t = b.at(Var::T);
      const Jet2& s = b.at(Var::S);
      const Jet2 a = eval_jet2(exprs_[0], b);
      const Jet2 u = eval_jet2(exprs_[1], b);
      r = {t + s * u, s, a + 0.5 * (t * s)};
      break;
    }
  }
  if (isometry_) {
    const Matrix3 m = isometry_matrix(*isometry_);
    const double shift[3] = {isometry_->a, isometry_->b, isometry_->c};
    std::array<Jet2, 3> moved;
    for (int i = 0; i < 3; ++i) {
      moved[i] = m.m[i][0] * r[0] + m.m[i][1] * r[1] + m.m[i][2] * r[2] + shift[i];
    }
    r = moved;
  }
  return r;
}

CoordPoint Chart::point(ParamPoint p) const {
  const auto r = position(p);
  return {r[0].value, r[1].value, r[2].value};
}

}  // namespace h3surf
