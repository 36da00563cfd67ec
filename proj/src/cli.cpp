#include "h3surf/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "h3surf/error.hpp"
#include "h3surf/graph_pde.hpp"
#include "h3surf/laplace.hpp"
#include "h3surf/report.hpp"
#include "h3surf/ruled.hpp"
#include "h3surf/surface.hpp"

namespace h3surf {

namespace {

double parse_number(std::string_view s, const std::string& what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw InvalidArgument(what + ": '" + std::string(s) + "' is not a finite number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& s, std::size_t n, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    out.push_back(parse_number(std::string_view(s).substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != n) {
    throw InvalidArgument(what + ": expected " + std::to_string(n) + " comma-separated values");
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& s, const std::string& what) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw InvalidArgument(what + ": expected lo:hi");
  const double lo = parse_number(std::string_view(s).substr(0, colon), what);
  const double hi = parse_number(std::string_view(s).substr(colon + 1), what);
  if (!(hi > lo)) throw InvalidArgument(what + ": empty range");
  return {lo, hi};
}

std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find('x');
  const auto to_int = [&](std::string_view v) {
    int n = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (v.empty() || res.ec != std::errc() || res.ptr != v.data() + v.size() || n < 1) {
      throw InvalidArgument("--grid: expected NxM with positive integers, got '" + s + "'");
    }
    return n;
  };
  if (x == std::string::npos) throw InvalidArgument("--grid: expected NxM, got '" + s + "'");
  return {to_int(std::string_view(s).substr(0, x)), to_int(std::string_view(s).substr(x + 1))};
}

struct ChartOptions {
  std::string graph;
  std::string family;
  std::string a;
  std::string u;
  std::string param;
  std::string c;
  std::string x_range = "-1:1";
  std::string y_range = "-1:1";
  std::string t_range = "-1:1";
  std::string s_range = "-1:1";
  std::string grid = "11x11";
  double h = 0.0;
};

struct OutputOptions {
  std::string format = "json";
  std::string out;
  bool timing = false;
};

void add_output_options(CLI::App* app, OutputOptions& o) {
  app->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app->add_option("--out", o.out, "write the report to this file");
  app->add_flag("--timing", o.timing, "record wall time in the report");
}

void add_chart_options(CLI::App* app, ChartOptions& c, bool with_family = true) {
  app->add_option("--graph", c.graph, "graph z = f(x, y)");
  if (with_family) {
    app->add_option("--family", c.family, "s1, s2 or param")
        ->check(CLI::IsMember({"s1", "s2", "param"}));
  }
  app->add_option("--a", c.a, "profile a(t)");
  app->add_option("--u", c.u, "ruling slope u(t) for s2");
  app->add_option("--param", c.param, "parametric x;y;z in (t, s)");
  app->add_option("--c", c.c, "value of the constant c");
  app->add_option("--x-range", c.x_range, "lo:hi");
  app->add_option("--y-range", c.y_range, "lo:hi");
  app->add_option("--t-range", c.t_range, "lo:hi");
  app->add_option("--s-range", c.s_range, "lo:hi");
  app->add_option("--grid", c.grid, "NxM samples");
  app->add_option("--h", c.h, "finite-difference step for the Laplacian (default from grid)");
}

std::optional<double> constant_of(const ChartOptions& o) {
  if (o.c.empty()) return std::nullopt;
  return parse_number(o.c, "--c");
}

Chart build_chart(const ChartOptions& o, std::string family) {
  if (family.empty()) family = o.family;
  Chart chart = [&] {
    if (!o.graph.empty()) {
      if (!family.empty()) throw InvalidArgument("--graph and --family are exclusive");
      return Chart::graph(parse(o.graph));
    }
    if (family == "s1") {
      if (o.a.empty()) throw InvalidArgument("s1 needs --a");
      return Chart::ruled_s1(parse(o.a));
    }
    if (family == "s2") {
      if (o.a.empty() || o.u.empty()) throw InvalidArgument("s2 needs --a and --u");
      return Chart::ruled_s2(parse(o.a), parse(o.u));
    }
    if (family == "param") {
      std::vector<std::string> parts;
      std::stringstream ss(o.param);
      for (std::string p; std::getline(ss, p, ';');) parts.push_back(p);
      if (parts.size() != 3) throw InvalidArgument("--param expects x;y;z");
      return Chart::parametric(parse(parts[0]), parse(parts[1]), parse(parts[2]));
    }
    throw InvalidArgument("give --graph or --family");
  }();
  if (const auto c = constant_of(o)) chart = chart.with_constant(*c);
  return chart;
}

GridSpec build_grid(const ChartOptions& o, const Chart& chart) {
  const bool graph = chart.kind() == ChartKind::Graph;
  const auto [u0, u1] = parse_range(graph ? o.x_range : o.t_range, graph ? "--x-range" : "--t-range");
  const auto [v0, v1] = parse_range(graph ? o.y_range : o.s_range, graph ? "--y-range" : "--s-range");
  const auto [nu, nv] = parse_grid(o.grid);
  GridSpec g{u0, u1, v0, v1, nu, nv, o.h};
  g.validate(chart);
  return g;
}

using Clock = std::chrono::steady_clock;

struct Output {
  std::ostream& out;
  const OutputOptions& opts;
  Clock::time_point start = Clock::now();

  Json timing() const {
    if (!opts.timing) return {{"enabled", false}};
    const double s = std::chrono::duration<double>(Clock::now() - start).count();
    return {{"enabled", true}, {"wall_seconds", s}};
  }

  void emit(const std::string& text) const {
    if (opts.out.empty()) {
      out << text;
    } else {
      write_atomic(opts.out, text);
    }
  }

  void emit_document(const std::string& command, Json chart, Json grid, Json results) const {
    Json doc;
    doc["version"] = kVersion;
    doc["command"] = command;
    doc["chart"] = std::move(chart);
    doc["grid"] = std::move(grid);
    doc["results"] = std::move(results);
    doc["timing"] = timing();
    emit(format_json(doc));
  }
};

std::string csv_line(std::initializer_list<double> values) {
  std::string line;
  bool first = true;
  for (double v : values) {
    if (!first) line += ',';
    first = false;
    line += format_shortest(v);
  }
  return line + '\n';
}

int cmd_analyze(const ChartOptions& co, double tol_minimal, const Output& o) {
  const Chart chart = build_chart(co, "");
  const GridSpec grid = build_grid(co, chart);
  if (o.opts.format == "csv") {
    o.emit(export_csv(chart, grid));
    return kExitOk;
  }
  double max_h = 0.0;
  Json pts = Json::array();
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const SurfaceData d = surface_data(chart, grid.at(i, j));
      max_h = std::max(max_h, std::abs(d.H));
      pts.push_back(to_json(d));
    }
  }
  Json res;
  res["max_abs_H"] = max_h;
  res["tol_minimal"] = tol_minimal;
  res["verdict"] = max_h <= tol_minimal ? "minimal" : "not minimal";
  res["points"] = pts;
  o.emit_document("analyze", to_json(chart), to_json(grid), {{"analyze", res}});
  return kExitOk;
}

int cmd_finite_type(const ChartOptions& co, const FiniteTypeOptions& fo, const Output& o) {
  const Chart chart = build_chart(co, "");
  const GridSpec grid = build_grid(co, chart);
  const FiniteTypeReport rep = finite_type_fit(chart, grid, fo);
  if (o.opts.format == "csv") {
    std::string text = "u,v,r1,r2,r3,lap_r1,lap_r2,lap_r3\n";
    for (const auto& p : rep.points) {
      text += csv_line({p.param.u, p.param.v, p.r[0], p.r[1], p.r[2], p.lap[0], p.lap[1], p.lap[2]});
    }
    o.emit(text);
    return kExitOk;
  }
  Json res = to_json(rep);
  res["tol_eigen"] = fo.tol_eigen;
  o.emit_document("finite-type", to_json(chart), to_json(grid), {{"finite_type", res}});
  return kExitOk;
}

int cmd_beltrami(const ChartOptions& co, const Output& o) {
  const Chart chart = build_chart(co, "");
  const GridSpec grid = build_grid(co, chart);
  if (o.opts.format == "csv") {
    std::string text = "u,v,tension1,tension2,tension3,twoHN1,twoHN2,twoHN3,lap_r1,lap_r2,lap_r3\n";
    for (int j = 0; j < grid.nv; ++j) {
      for (int i = 0; i < grid.nu; ++i) {
        const ParamPoint p = grid.at(i, j);
        const SurfaceData d = surface_data(chart, p);
        const auto t = tension_coords(chart, p);
        const CoordVector e = frame_to_coord(d.point, (2.0 * d.H) * d.normal);
        const auto lap = beltrami_coords(chart, p, grid.step());
        text += csv_line({p.u, p.v, t[0], t[1], t[2], e.vx, e.vy, e.vz, lap[0], lap[1], lap[2]});
      }
    }
    o.emit(text);
    return kExitOk;
  }
  const BeltramiIdentityReport rep = beltrami_identity_check(chart, grid);
  o.emit_document("beltrami", to_json(chart), to_json(grid), {{"beltrami", to_json(rep)}});
  return kExitOk;
}

int cmd_export(const ChartOptions& co, const Output& o) {
  const Chart chart = build_chart(co, "");
  const GridSpec grid = build_grid(co, chart);
  o.emit(export_csv(chart, grid));
  return kExitOk;
}

int cmd_ruled_s1(const ChartOptions& co, const S1ClassifyOptions& so, const Output& o) {
  if (co.a.empty()) throw InvalidArgument("ruled s1 needs --a");
  const S1Params params{parse(co.a), {}, constant_of(co)};
  const Chart chart = s1_chart(params);
  const GridSpec grid = build_grid(co, chart);
  const S1Classification cls = s1_classify(params, grid, so);
  Json samples = Json::array();
  std::string text = "t,E,F,G,W2,H,H_scaled,lap_r1,lap_r2,lap_r3\n";
  for (int i = 0; i < grid.nu; ++i) {
    const double t = grid.at(i, 0).u;
    const S1ClosedForm cf = s1_closed_form(params, t);
    const auto lap = s1_laplacian_closed(params, t, 0.0);
    samples.push_back({{"t", t},
                       {"E", cf.E},
                       {"F", cf.F},
                       {"G", cf.G},
                       {"W2", cf.W2},
                       {"H", cf.H},
                       {"H_scaled", cf.H_scaled},
                       {"laplacian", Json::array({lap[0], lap[1], lap[2]})}});
    text += csv_line({t, cf.E, cf.F, cf.G, cf.W2, cf.H, cf.H_scaled, lap[0], lap[1], lap[2]});
  }
  if (o.opts.format == "csv") {
    o.emit(text);
    return kExitOk;
  }
  o.emit_document("ruled s1", to_json(chart), to_json(grid),
                  {{"s1", to_json(cls)}, {"closed_form", samples}});
  return kExitOk;
}

int cmd_ruled_s2(const ChartOptions& co, const std::string& lambda, bool fit, const Output& o) {
  if (co.a.empty() || co.u.empty()) throw InvalidArgument("ruled s2 needs --a and --u");
  const S2Params params{parse(co.a), parse(co.u), {}, constant_of(co), {}};
  const Chart chart = s2_chart(params);
  const auto [x0, x1] = parse_range(co.x_range, "--x-range");
  const auto [y0, y1] = parse_range(co.y_range, "--y-range");
  const auto [nx, ny] = parse_grid(co.grid);
  const GridSpec grid{x0, x1, y0, y1, nx, ny, 0.0};
  std::array<double, 3> l{};
  if (!lambda.empty()) {
    const auto v = parse_list(lambda, 3, "--lambda");
    l = {v[0], v[1], v[2]};
  }
  const S2ResidualReport rep = s2_system_residuals(params, grid, l, fit);
  double max_qup = 0.0;
  double max_implicit = 0.0;
  for (const auto& p : rep.points) {
    const PQ pq = s2_P_Q(params, p.x, p.y);
    max_qup = std::max(max_qup, std::abs(pq.Q + pq.u * pq.P));
    max_implicit = std::max(max_implicit, s2_solve_t(params, p.x, p.y).residual);
  }
  if (o.opts.format == "csv") {
    std::string text = "x,y,t,f,u,P,W,H,res1,res2,res3\n";
    for (const auto& p : rep.points) {
      text += csv_line({p.x, p.y, p.t, p.f, p.u, p.P, p.W, p.H, p.residual[0], p.residual[1],
                        p.residual[2]});
    }
    o.emit(text);
    return kExitOk;
  }
  Json g = {{"x_range", Json::array({x0, x1})},
            {"y_range", Json::array({y0, y1})},
            {"size", Json::array({nx, ny})}};
  o.emit_document("ruled s2", to_json(chart), g,
                  {{"s2", to_json(rep)},
                   {"max_abs_Q_plus_uP", max_qup},
                   {"max_implicit_residual", max_implicit}});
  return kExitOk;
}

struct PdeCliOptions {
  std::string equation = "equal12";
  std::string lambda = "0,0,0";
  std::string distinct = "lambda2";
  double u0 = 0.0;
  bool implicit = false;
  std::string boundary = "0";
  int max_iter = 50;
  double tol = 1e-10;
};

int cmd_solve_pde(const ChartOptions& co, const PdeCliOptions& po, const Output& o) {
  PdeProblem pb;
  pb.equation = parse_graph_equation(po.equation);
  const auto l = parse_list(po.lambda, 3, "--lambda");
  pb.lambda = {l[0], l[1], l[2],
               po.distinct == "difference" ? DistinctCoefficient::Difference
                                           : DistinctCoefficient::Lambda2};
  Json chart;
  if (po.implicit) {
    if (co.a.empty() || co.u.empty()) throw InvalidArgument("--u-implicit needs --a and --u");
    S2Params fam{parse(co.a), parse(co.u), {}, constant_of(co), {}};
    chart = to_json(s2_chart(fam));
    pb.u = UMode::implicit(std::move(fam));
  } else {
    pb.u = UMode::constant(po.u0);
    chart = {{"kind", "graph-pde"}, {"u0", po.u0}};
  }
  const auto [x0, x1] = parse_range(co.x_range, "--x-range");
  const auto [y0, y1] = parse_range(co.y_range, "--y-range");
  const auto [nx, ny] = parse_grid(co.grid);
  pb.grid = {x0, x1, y0, y1, nx, ny};
  const Expr g = parse(po.boundary);
  pb.boundary = perimeter_values(pb.grid, [&](double x, double y) {
    return eval(g, {{Var::X, Jet2::constant(x)}, {Var::Y, Jet2::constant(y)}});
  });
  pb.options.max_iterations = po.max_iter;
  pb.options.tolerance = po.tol;
  const PdeSolution sol = pde_solve(pb);
  if (o.opts.format == "csv") {
    std::string text = "x,y,f\n";
    for (int j = 0; j < pb.grid.ny; ++j) {
      for (int i = 0; i < pb.grid.nx; ++i) text += csv_line({pb.grid.x(i), pb.grid.y(j), sol.at(i, j)});
    }
    o.emit(text);
    return kExitOk;
  }
  chart["equation"] = graph_equation_name(pb.equation);
  chart["lambda"] = l;
  chart["boundary"] = g.to_string();
  Json res = to_json(sol);
  res["independent_residual"] = pde_interior_residual(pb, sol.f);
  Json grid = {{"x_range", Json::array({x0, x1})},
               {"y_range", Json::array({y0, y1})},
               {"size", Json::array({nx, ny})}};
  o.emit_document("solve-pde", chart, grid, {{"pde", res}});
  return kExitOk;
}

int cmd_geodesic(const std::string& point, const std::string& dir, int random, std::uint64_t seed,
                 const Output& o) {
  Json res;
  if (random > 0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    int geodesics = 0;
    bool consistent = true;
    for (int k = 0; k < random; ++k) {
      const CoordPoint p{dist(rng), dist(rng), dist(rng)};
      CoordVector v{dist(rng), dist(rng), dist(rng)};
      // Every fourth sample is forced into ker omega to exercise both verdicts.
      if (k % 4 == 0) v.vz = -0.5 * (p.y * v.vx - p.x * v.vy);
      const LineGeodesicResult r = line_is_geodesic(p, v);
      if (r.is_geodesic) ++geodesics;
      const double w = darboux_omega(p, v);
      const double expected = std::abs(w) * std::hypot(v.vx, v.vy);
      if (r.accel_norm != expected || r.is_geodesic != (expected == 0.0)) consistent = false;
    }
    res = {{"samples", random}, {"seed", seed}, {"geodesic_count", geodesics},
           {"consistent", consistent}};
  } else {
    const auto p = parse_list(point, 3, "--point");
    const auto v = parse_list(dir, 3, "--dir");
    const LineGeodesicResult r = line_is_geodesic({p[0], p[1], p[2]}, {v[0], v[1], v[2]});
    res = {{"point", p},
           {"direction", v},
           {"is_geodesic", r.is_geodesic},
           {"accel_norm", r.accel_norm},
           {"verdict", r.is_geodesic ? std::string("geodesic")
                                     : "not geodesic, |accel|=" + format_shortest(r.accel_norm)}};
  }
  if (o.opts.format == "csv") {
    if (random > 0) throw InvalidArgument("geodesic --random has no csv form");
    o.emit("is_geodesic,accel_norm\n" + std::string(res["is_geodesic"].get<bool>() ? "1" : "0") +
           "," + format_shortest(res["accel_norm"].get<double>()) + "\n");
    return kExitOk;
  }
  o.emit_document("geodesic", Json::object(), Json::object(), {{"geodesic", res}});
  return kExitOk;
}

void report_error(std::ostream& err, const char* kind, int code, std::string message) {
  for (char& ch : message) {
    if (ch == '\n' || ch == '\r') ch = ' ';
  }
  err << "error: kind=" << kind << " exit=" << code << " message=" << message << "\n";
}

// Config entries become ordinary flags placed before the user's flags, so
// anything given on the command line wins.
std::vector<std::string> apply_config(CLI::App& app, std::vector<std::string> args) {
  std::string path;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config" && k + 1 < args.size()) {
      path = args[k + 1];
      args.erase(args.begin() + static_cast<long>(k), args.begin() + static_cast<long>(k) + 2);
      break;
    }
    if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<long>(k));
      break;
    }
  }
  if (path.empty() || args.empty()) return args;
  std::ifstream f(path);
  if (!f) throw Error("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  const auto settings = parse_config(ss.str());

  CLI::App* sub = app.get_subcommand_no_throw(args[0]);
  std::size_t insert_at = 1;
  if (sub && args.size() > 1) {
    if (CLI::App* inner = sub->get_subcommand_no_throw(args[1])) {
      sub = inner;
      insert_at = 2;
    }
  }
  if (!sub) return args;
  std::vector<std::string> extra;
  for (const auto& [key, value] : settings) {
    const std::string flag = "--" + key;
    const CLI::Option* opt = sub->get_option_no_throw(flag);
    if (!opt) continue;
    if (opt->get_type_size() == 0) {
      if (value == "true" || value == "1") extra.push_back(flag);
      continue;
    }
    extra.push_back(flag + "=" + value);
  }
  args.insert(args.begin() + static_cast<long>(insert_at), extra.begin(), extra.end());
  return args;
}

}  // namespace

int run(const std::vector<std::string>& args_in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface geometry in the Heisenberg group H3", "h3surf"};
  // Long form only: --h is the finite-difference step.
  app.set_help_flag("--help", "print help and exit");
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.set_version_flag("--version", std::string(kVersion));

  ChartOptions co;
  OutputOptions oo;
  FiniteTypeOptions fo;
  S1ClassifyOptions so;
  double tol_minimal = 1e-10;
  std::uint64_t seed = 1;

  auto* analyze = app.add_subcommand("analyze", "surface data and mean curvature over a grid");
  add_chart_options(analyze, co);
  add_output_options(analyze, oo);
  analyze->add_option("--tol-minimal", tol_minimal, "max |H| for the minimal verdict");

  auto* finite = app.add_subcommand("finite-type", "fit Lap r_i = lambda_i r_i and classify");
  add_chart_options(finite, co);
  add_output_options(finite, oo);
  finite->add_option("--tol-eigen", fo.tol_eigen, "relative residual tolerance");

  auto* beltrami = app.add_subcommand("beltrami", "compare Lap r with 2 H N");
  add_chart_options(beltrami, co);
  add_output_options(beltrami, oo);

  auto* exp = app.add_subcommand("export", "CSV grid of r, E, F, G, H and Lap r_i");
  add_chart_options(exp, co);
  add_output_options(exp, oo);

  auto* ruled = app.add_subcommand("ruled", "ruled families");
  ruled->require_subcommand(1);
  auto* s1 = ruled->add_subcommand("s1", "vertical rulings (t, a(t), s)");
  add_chart_options(s1, co, false);
  add_output_options(s1, oo);
  s1->add_option("--tol-minimal", so.tol_minimal, "max |H| for the minimal case");
  s1->add_option("--tol-eigen", so.tol_lambda, "tolerance on lambda against 1/c");
  auto* s2 = ruled->add_subcommand("s2", "horizontal rulings over (t, 0, a(t))");
  add_chart_options(s2, co, false);
  add_output_options(s2, oo);
  std::string s2_lambda;
  bool s2_fit = false;
  s2->add_option("--lambda", s2_lambda, "l1,l2,l3 for the residuals");
  s2->add_flag("--fit", s2_fit, "least-squares fit the lambdas first");

  auto* pde = app.add_subcommand("solve-pde", "Dirichlet problem for the graph equations");
  PdeCliOptions po;
  pde->add_option("--equation", po.equation, "lambda2-only ... all-equal");
  pde->add_option("--lambda", po.lambda, "l1,l2,l3");
  pde->add_option("--distinct-coef", po.distinct, "lambda2 or difference")
      ->check(CLI::IsMember({"lambda2", "difference"}));
  pde->add_option("--u0", po.u0, "constant u");
  pde->add_flag("--u-implicit", po.implicit, "u(t(x, y)) of the family given by --a, --u");
  pde->add_option("--a", co.a, "profile a(t) for --u-implicit");
  pde->add_option("--u", co.u, "ruling slope u(t) for --u-implicit");
  pde->add_option("--c", co.c, "value of the constant c");
  pde->add_option("--boundary", po.boundary, "Dirichlet data g(x, y)");
  pde->add_option("--x-range", co.x_range, "lo:hi");
  pde->add_option("--y-range", co.y_range, "lo:hi");
  pde->add_option("--grid", co.grid, "NxM nodes");
  pde->add_option("--max-iter", po.max_iter, "Newton iterations");
  pde->add_option("--pde-tol", po.tol, "residual tolerance");
  add_output_options(pde, oo);

  auto* geo = app.add_subcommand("geodesic", "is the straight line p + s v a geodesic");
  std::string point = "0,0,0";
  std::string dir;
  int random = 0;
  geo->add_option("--point", point, "x,y,z");
  geo->add_option("--dir", dir, "vx,vy,vz");
  geo->add_option("--random", random, "check N random lines instead");
  geo->add_option("--seed", seed, "seed for --random");
  add_output_options(geo, oo);

  const Output output{out, oo};
  try {
    std::vector<std::string> args = apply_config(app, args_in);
    // CLI11 wants the arguments in reverse order.
    std::vector<std::string> rev(args.rbegin(), args.rend());
    // Defaults depend on the subcommand; solve-pde uses a finer grid.
    co.grid = (!args.empty() && args[0] == "solve-pde") ? "33x33" : "11x11";
    app.parse(rev);

    if (*analyze) return cmd_analyze(co, tol_minimal, output);
    if (*finite) return cmd_finite_type(co, fo, output);
    if (*beltrami) return cmd_beltrami(co, output);
    if (*exp) return cmd_export(co, output);
    if (*s1) return cmd_ruled_s1(co, so, output);
    if (*s2) return cmd_ruled_s2(co, s2_lambda, s2_fit, output);
    if (*pde) return cmd_solve_pde(co, po, output);
    if (*geo) {
      if (random <= 0 && dir.empty()) throw InvalidArgument("geodesic needs --dir or --random");
      return cmd_geodesic(point, dir, random, seed, output);
    }
    throw InvalidArgument("no subcommand");
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", kExitUsage, e.what());
    return kExitUsage;
  } catch (const ParseError& e) {
    report_error(err, "parse", kExitParse, e.what());
    return kExitParse;
  } catch (const InvalidArgument& e) {
    report_error(err, "usage", kExitUsage, e.what());
    return kExitUsage;
  } catch (const NumericalError& e) {
    report_error(err, "numerical", kExitNumerical, e.what());
    return kExitNumerical;
  } catch (const Error& e) {
    report_error(err, "io", kExitIo, e.what());
    return kExitIo;
  }
}

}  // namespace h3surf
