#include "h3surf/ruled.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "h3surf/error.hpp"
#include "h3surf/surface.hpp"

namespace h3surf {

namespace {

Bindings constant_bindings(std::optional<double> c) {
  Bindings b;
  if (c) b[Var::C] = Jet2::constant(*c);
  return b;
}

}  // namespace

Chart s1_chart(const S1Params& p) {
  Chart chart = Chart::ruled_s1(p.a, p.domain);
  return p.c ? chart.with_constant(*p.c) : chart;
}

S1ClosedForm s1_closed_form(const S1Params& p, double t) {
  const Jet1 a = eval_univariate(p.a, t, constant_bindings(p.c));
  S1ClosedForm cf;
  cf.a = a.value;
  cf.da = a.d1;
  cf.dda = a.d2;
  const double m = a.value - t * a.d1;
  cf.E = 1.0 + a.d1 * a.d1 + 0.25 * m * m;
  cf.F = 0.5 * m;
  cf.G = 1.0;
  cf.W2 = 1.0 + a.d1 * a.d1;
  cf.H_scaled = a.d2 / (2.0 * cf.W2);
  cf.H = cf.H_scaled / std::sqrt(cf.W2);
  return cf;
}

std::array<double, 3> s1_laplacian_closed(const S1Params& p, double t, double /*s*/) {
  const S1ClosedForm cf = s1_closed_form(p, t);
  const double k = cf.H_scaled / cf.W2;
  return {2.0 * cf.da * k, -2.0 * k, -(t + cf.a * cf.da) * k};
}

const char* s1_case_name(S1Case c) {
  switch (c) {
    case S1Case::Minimal:
      return "minimal";
    case S1Case::Cylinder:
      return "cylinder";
    case S1Case::Neither:
      return "neither";
  }
  return "?";
}

S1Classification s1_classify(const S1Params& p, const GridSpec& grid,
                             const S1ClassifyOptions& options) {
  const Chart chart = s1_chart(p);
  grid.validate(chart);
  S1Classification out;
  double c_sum = 0.0;
  for (int i = 0; i < grid.nu; ++i) {
    const double t = grid.at(i, 0).u;
    const S1ClosedForm cf = s1_closed_form(p, t);
    out.max_abs_H = std::max(out.max_abs_H, std::abs(cf.H));
    out.max_cylinder_defect = std::max(out.max_cylinder_defect, std::abs(cf.a * cf.da + t));
    c_sum += cf.a * cf.a + t * t;
  }
  if (out.max_abs_H <= options.tol_minimal) {
    out.kind = S1Case::Minimal;
  } else if (out.max_cylinder_defect <= options.tol_cylinder) {
    out.kind = S1Case::Cylinder;
    out.c = c_sum / grid.nu;
    out.fit = finite_type_fit(chart, grid);
    const double expected = 1.0 / *out.c;
    const auto near = [&](const std::optional<double>& l) {
      return l && std::abs(*l - expected) <= options.tol_lambda;
    };
    out.lambda_consistent = near(out.fit->lambda[0]) && near(out.fit->lambda[1]);
  }
  return out;
}

Chart s2_chart(const S2Params& p) {
  Chart chart = Chart::ruled_s2(p.a, p.u, p.domain);
  return p.c ? chart.with_constant(*p.c) : chart;
}

ImplicitT s2_solve_t(const S2Params& p, double x, double y) {
  const ImplicitSolverConfig& cfg = p.solver;
  const Bindings extra = constant_bindings(p.c);
  const auto g = [&](double t) {
    const Jet1 u = eval_univariate(p.u, t, extra);
    return std::pair{t + y * u.value - x, 1.0 + y * u.d1};
  };

  ImplicitT out;
  double t = x - y * eval_univariate(p.u, x, extra).value;
  bool done = false;
  for (int it = 0; it < cfg.max_iterations; ++it) {
    const auto [r, dr] = g(t);
    out.iterations = it + 1;
    if (std::abs(r) <= cfg.tolerance) {
      done = true;
      break;
    }
    if (!std::isfinite(r) || std::abs(dr) < cfg.min_jacobian) break;
    const double next = t - r / dr;
    if (!std::isfinite(next)) break;
    t = next;
  }

  if (!done) {
    // Grow a bracket around the Newton start until the residual changes sign.
    const double t0 = x - y * eval_univariate(p.u, x, extra).value;
    double lo = 0.0, hi = 0.0, glo = 0.0;
    bool bracketed = false;
    double w = cfg.initial_bracket;
    for (int k = 0; k < cfg.max_bracket_growth && !bracketed; ++k, w *= 2.0) {
      lo = t0 - w;
      hi = t0 + w;
      glo = g(lo).first;
      const double ghi = g(hi).first;
      if (std::isfinite(glo) && std::isfinite(ghi) && (glo <= 0.0) != (ghi <= 0.0)) {
        bracketed = true;
      }
    }
    if (!bracketed) {
      throw ConvergenceError("implicit t: no sign-changing bracket for x = t + y u(t) at (" +
                                 std::to_string(x) + ", " + std::to_string(y) + ")",
                             std::abs(g(t).first), out.iterations);
    }
    out.bisected = true;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double gm = g(mid).first;
      ++out.iterations;
      t = mid;
      if (std::abs(gm) <= cfg.tolerance || mid == lo || mid == hi) break;
      if ((gm <= 0.0) == (glo <= 0.0)) {
        lo = mid;
        glo = gm;
      } else {
        hi = mid;
      }
    }
  }

  const Jet1 u = eval_univariate(p.u, t, extra);
  const double D = 1.0 + y * u.d1;
  if (std::abs(D) < cfg.min_jacobian) {
    throw DegenerateChartError("implicit t: 1 + y u'(t) vanishes at (" + std::to_string(x) +
                               ", " + std::to_string(y) + ")");
  }
  out.t = t;
  out.t_x = 1.0 / D;
  out.t_y = -u.value / D;
  out.residual = std::abs(t + y * u.value - x);
  return out;
}

Jet2 s2_t_jet(const S2Params& p, double x, double y) {
  const ImplicitT s = s2_solve_t(p, x, y);
  const Jet1 u = eval_univariate(p.u, s.t, constant_bindings(p.c));
  const double D = 1.0 + y * u.d1;
  const double tx = s.t_x;
  const double ty = s.t_y;
  Jet2 j;
  j.value = s.t;
  j.grad = {tx, ty};
  j.hess = {-(y * u.d2 * tx * tx) / D, -(y * u.d2 * tx * ty + u.d1 * tx) / D,
            -(y * u.d2 * ty * ty + 2.0 * u.d1 * ty) / D};
  return j;
}

Jet2 s2_u_jet(const S2Params& p, double x, double y) {
  Bindings b = constant_bindings(p.c);
  b[Var::T] = s2_t_jet(p, x, y);
  return eval_jet2(p.u, b);
}

Jet2 s2_graph_jet(const S2Params& p, double x, double y) {
  const Jet2 t = s2_t_jet(p, x, y);
  Bindings b = constant_bindings(p.c);
  b[Var::T] = t;
  return eval_jet2(p.a, b) + 0.5 * (t * Jet2::variable(y, 1));
}

PQ s2_P_Q(const S2Params& p, double x, double y) {
  const ImplicitT s = s2_solve_t(p, x, y);
  const Bindings extra = constant_bindings(p.c);
  const Jet1 a = eval_univariate(p.a, s.t, extra);
  const double u = eval_univariate(p.u, s.t, extra).value;
  const double k = a.d1 + 0.5 * y;
  const double fx = k * s.t_x;
  const double fy = k * s.t_y + 0.5 * s.t;
  PQ out{fx + 0.5 * y, fy - 0.5 * x, u, s.t};
  const double defect = out.Q + u * out.P;
  if (std::abs(defect) > 1e-9 * (1.0 + std::abs(u * out.P))) {
    throw NumericalError("S2: Q + u P = " + std::to_string(defect) + " at (" +
                         std::to_string(x) + ", " + std::to_string(y) + ")");
  }
  return out;
}

S2ResidualReport s2_system_residuals(const S2Params& p, const GridSpec& grid,
                                     std::array<double, 3> lambda, bool fit) {
  if (grid.nu < 2 || grid.nv < 2) throw InvalidArgument("S2 residual grid needs 2x2 samples");
  const Chart chart = s2_chart(p);
  S2ResidualReport rep;
  rep.points.reserve(grid.size());
  // Left-hand sides of the three equations, before lambda enters.
  std::vector<std::array<double, 3>> lhs;
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint xy = grid.at(i, j);
      S2ResidualPoint pt;
      pt.x = xy.u;
      pt.y = xy.v;
      const Jet2 f = s2_graph_jet(p, pt.x, pt.y);
      pt.t = s2_solve_t(p, pt.x, pt.y).t;
      pt.f = f.value;
      pt.u = s2_u_jet(p, pt.x, pt.y).value;
      pt.P = f.d(0) + 0.5 * pt.y;
      const double Q = f.d(1) - 0.5 * pt.x;
      pt.W = std::sqrt(1.0 + pt.P * pt.P + Q * Q);
      pt.H = mean_curvature(chart, {pt.t, pt.y});
      pt.H_simplified = (f.d2(0, 0) + f.d2(1, 1)) / (2.0 * pt.W * pt.W * pt.W);
      const double W2 = pt.W * pt.W;
      lhs.push_back({-pt.P / W2 * (pt.u - 2.0 * pt.H * pt.W),
                     -pt.P / W2 * (1.0 + 2.0 * pt.u * pt.H * pt.W), 4.0 * pt.H / pt.W});
      rep.max_H_gap = std::max(rep.max_H_gap, std::abs(pt.H - pt.H_simplified));
      rep.points.push_back(pt);
    }
  }
  if (fit) {
    double n1 = 0.0, d1 = 0.0, n2 = 0.0, d2 = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      const auto& pt = rep.points[k];
      n1 += lhs[k][0] * pt.x;
      d1 += pt.x * pt.x;
      n2 += lhs[k][1] * pt.y;
      d2 += pt.y * pt.y;
    }
    lambda[0] = d1 > 0.0 ? n1 / d1 : 0.0;
    lambda[1] = d2 > 0.0 ? n2 / d2 : 0.0;
    // 4H/W - (l2 - l1) x y = -2 l3 f
    double n3 = 0.0, d3 = 0.0;
    for (std::size_t k = 0; k < lhs.size(); ++k) {
      const auto& pt = rep.points[k];
      const double r = lhs[k][2] - (lambda[1] - lambda[0]) * pt.x * pt.y;
      n3 += r * (-2.0 * pt.f);
      d3 += 4.0 * pt.f * pt.f;
    }
    lambda[2] = d3 > 0.0 ? n3 / d3 : 0.0;
  }
  rep.lambda = lambda;
  rep.fitted = fit;
  std::array<double, 3> sq{};
  for (std::size_t k = 0; k < lhs.size(); ++k) {
    auto& pt = rep.points[k];
    pt.residual = {lhs[k][0] - lambda[0] * pt.x, lhs[k][1] - lambda[1] * pt.y,
                   lhs[k][2] - (lambda[1] - lambda[0]) * pt.x * pt.y + 2.0 * lambda[2] * pt.f};
    for (int e = 0; e < 3; ++e) {
      rep.max_abs[e] = std::max(rep.max_abs[e], std::abs(pt.residual[e]));
      sq[e] += pt.residual[e] * pt.residual[e];
    }
  }
  for (int e = 0; e < 3; ++e) rep.rms[e] = std::sqrt(sq[e] / static_cast<double>(lhs.size()));
  return rep;
}

ProfileTable::ProfileTable(std::vector<double> t, std::vector<double> a, std::vector<double> da)
    : t_(std::move(t)), a_(std::move(a)), da_(std::move(da)) {
  if (t_.size() < 2 || a_.size() != t_.size() || da_.size() != t_.size()) {
    throw InvalidArgument("profile table needs at least two consistent samples");
  }
}

double ProfileTable::operator()(double t) const {
  if (t < t_.front() || t > t_.back()) {
    throw InvalidArgument("profile table: t = " + std::to_string(t) + " outside [" +
                          std::to_string(t_.front()) + ", " + std::to_string(t_.back()) + "]");
  }
  auto it = std::upper_bound(t_.begin(), t_.end(), t);
  std::size_t k = it == t_.begin() ? 0 : static_cast<std::size_t>(it - t_.begin()) - 1;
  if (k >= t_.size() - 1) k = t_.size() - 2;
  const double h = t_[k + 1] - t_[k];
  const double s = (t - t_[k]) / h;
  const double h00 = (1.0 + 2.0 * s) * (1.0 - s) * (1.0 - s);
  const double h10 = s * (1.0 - s) * (1.0 - s);
  const double h01 = s * s * (3.0 - 2.0 * s);
  const double h11 = s * s * (s - 1.0);
  return h00 * a_[k] + h10 * h * da_[k] + h01 * a_[k + 1] + h11 * h * da_[k + 1];
}

ProfileTable integrate_s2_profile(const Expr& u, double t_lo, double t_hi, double t0, double a0,
                                  int steps, std::optional<double> c) {
  if (!(t_lo < t_hi) || t0 < t_lo || t0 > t_hi) {
    throw InvalidArgument("profile: need t_lo < t_hi and t0 inside the range");
  }
  if (steps < 2) throw InvalidArgument("profile: at least two steps");
  const Bindings extra = constant_bindings(c);
  const auto rhs = [&](double t) {
    const double uv = eval_univariate(u, t, extra).value;
    return -2.0 * uv * t / (1.0 + uv * uv);
  };
  const double h_nominal = (t_hi - t_lo) / steps;

  // The right-hand side does not depend on a, so each RK4 step is Simpson's rule.
  const auto sweep = [&](double end) {
    std::vector<double> ts{t0}, as{a0}, ds{rhs(t0)};
    const double span = end - t0;
    const int n = static_cast<int>(std::ceil(std::abs(span) / h_nominal - 1e-9));
    const double h = n > 0 ? span / n : 0.0;
    double a = a0;
    for (int k = 0; k < n; ++k) {
      const double t = t0 + k * h;
      const double k1 = rhs(t);
      const double k2 = rhs(t + 0.5 * h);
      const double k4 = rhs(t + h);
      a += h * (k1 + 4.0 * k2 + k4) / 6.0;
      const double tn = k + 1 == n ? end : t0 + (k + 1) * h;
      const double dn = rhs(tn);
      if (!std::isfinite(a) || !std::isfinite(dn)) {
        throw NumericalError("profile: solution is not finite at t = " + std::to_string(tn));
      }
      ts.push_back(tn);
      as.push_back(a);
      ds.push_back(dn);
    }
    return std::tuple{ts, as, ds};
  };

  auto [tb, ab, db] = sweep(t_lo);
  auto [tf, af, df] = sweep(t_hi);
  std::vector<double> t, a, da;
  for (std::size_t k = tb.size(); k-- > 1;) {
    t.push_back(tb[k]);
    a.push_back(ab[k]);
    da.push_back(db[k]);
  }
  t.insert(t.end(), tf.begin(), tf.end());
  a.insert(a.end(), af.begin(), af.end());
  da.insert(da.end(), df.begin(), df.end());
  if (t.size() < 2) throw InvalidArgument("profile: empty range");
  return ProfileTable(std::move(t), std::move(a), std::move(da));
}

}  // namespace h3surf
