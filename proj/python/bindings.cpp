#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "h3surf/cli.hpp"
#include "h3surf/error.hpp"
#include "h3surf/expr.hpp"
#include "h3surf/graph_pde.hpp"
#include "h3surf/h3.hpp"
#include "h3surf/laplace.hpp"
#include "h3surf/report.hpp"
#include "h3surf/ruled.hpp"
#include "h3surf/surface.hpp"

namespace py = pybind11;
using namespace h3surf;

namespace {

using Vec3 = std::array<double, 3>;
using Range = std::pair<double, double>;

Vec3 frame(const FrameVector& v) { return {v.a1, v.a2, v.a3}; }

GridSpec grid_of(Range u, Range v, std::pair<int, int> n, double h) {
  return {u.first, u.second, v.first, v.second, n.first, n.second, h};
}

std::optional<Expr> maybe_parse(const std::optional<std::string>& s) {
  return s ? std::optional<Expr>(parse(*s)) : std::nullopt;
}

}  // namespace

PYBIND11_MODULE(_h3surf, m) {
  m.doc() = "Surface geometry in the Heisenberg group H3";
  m.attr("__version__") = std::string(kVersion);

  static py::exception<Error> base(m, "H3Error");
  static py::exception<ParseError> parse_exc(m, "ParseError", base.ptr());
  static py::exception<InvalidArgument> invalid(m, "InvalidArgument", base.ptr());
  static py::exception<NumericalError> numerical(m, "NumericalError", base.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      parse_exc(e.what());
    } catch (const InvalidArgument& e) {
      invalid(e.what());
    } catch (const NumericalError& e) {
      numerical(e.what());
    } catch (const Error& e) {
      base(e.what());
    }
  });

  py::class_<Chart>(m, "Chart")
      .def_static(
          "graph", [](const std::string& f) { return Chart::graph(parse(f)); }, py::arg("f"))
      .def_static(
          "parametric",
          [](const std::string& x, const std::string& y, const std::string& z) {
            return Chart::parametric(parse(x), parse(y), parse(z));
          },
          py::arg("x"), py::arg("y"), py::arg("z"))
      .def_static(
          "ruled_s1", [](const std::string& a) { return Chart::ruled_s1(parse(a)); }, py::arg("a"))
      .def_static(
          "ruled_s2",
          [](const std::string& a, const std::string& u) {
            return Chart::ruled_s2(parse(a), parse(u));
          },
          py::arg("a"), py::arg("u"))
      .def("with_constant", &Chart::with_constant, py::arg("c"))
      .def(
          "transformed",
          [](const Chart& c, double theta, double a, double b, double cz) {
            return c.transformed(Isometry{theta, a, b, cz});
          },
          py::arg("theta"), py::arg("a"), py::arg("b"), py::arg("c"))
      .def(
          "point",
          [](const Chart& c, double u, double v) {
            const CoordPoint p = c.point({u, v});
            return Vec3{p.x, p.y, p.z};
          },
          py::arg("u"), py::arg("v"))
      .def_property_readonly("kind", [](const Chart& c) { return chart_kind_name(c.kind()); })
      .def("__repr__", [](const Chart& c) { return "<Chart " + to_json(c).dump() + ">"; });

  m.def(
      "surface_data",
      [](const Chart& c, double u, double v) { return to_json(surface_data(c, {u, v})).dump(); },
      py::arg("chart"), py::arg("u"), py::arg("v"), "Surface data at one point as JSON text.");
  m.def(
      "mean_curvature", [](const Chart& c, double u, double v) { return mean_curvature(c, {u, v}); },
      py::arg("chart"), py::arg("u"), py::arg("v"));
  m.def(
      "unit_normal", [](const Chart& c, double u, double v) { return frame(unit_normal(c, {u, v})); },
      py::arg("chart"), py::arg("u"), py::arg("v"));
  m.def(
      "tension_field",
      [](const Chart& c, double u, double v) { return frame(tension_field(c, {u, v})); },
      py::arg("chart"), py::arg("u"), py::arg("v"));
  m.def(
      "beltrami_coords",
      [](const Chart& c, double u, double v, double h) { return beltrami_coords(c, {u, v}, h); },
      py::arg("chart"), py::arg("u"), py::arg("v"), py::arg("h") = 1e-3);
  m.def(
      "finite_type_fit",
      [](const Chart& c, Range u, Range v, std::pair<int, int> n, double h) {
        return to_json(finite_type_fit(c, grid_of(u, v, n, h)), false).dump();
      },
      py::arg("chart"), py::arg("u_range"), py::arg("v_range"), py::arg("grid") = std::pair{11, 11},
      py::arg("h") = 0.0);
  m.def(
      "beltrami_identity_check",
      [](const Chart& c, Range u, Range v, std::pair<int, int> n) {
        return to_json(beltrami_identity_check(c, grid_of(u, v, n, 0.0))).dump();
      },
      py::arg("chart"), py::arg("u_range"), py::arg("v_range"), py::arg("grid") = std::pair{11, 11});

  m.def(
      "line_is_geodesic",
      [](Vec3 p, Vec3 v) {
        const auto r = line_is_geodesic({p[0], p[1], p[2]}, {v[0], v[1], v[2]});
        return std::pair{r.is_geodesic, r.accel_norm};
      },
      py::arg("point"), py::arg("direction"));

  m.def(
      "s1_classify",
      [](const std::string& a, std::optional<double> c, Range t, Range s, std::pair<int, int> n) {
        return to_json(s1_classify({parse(a), {}, c}, grid_of(t, s, n, 0.0))).dump();
      },
      py::arg("a"), py::arg("c") = std::nullopt, py::arg("t_range") = Range{-1, 1},
      py::arg("s_range") = Range{-1, 1}, py::arg("grid") = std::pair{11, 11});
  m.def(
      "s2_solve_t",
      [](const std::string& u, double x, double y) {
        const ImplicitT r = s2_solve_t({parse("0"), parse(u), {}, std::nullopt, {}}, x, y);
        return py::dict(py::arg("t") = r.t, py::arg("t_x") = r.t_x, py::arg("t_y") = r.t_y,
                        py::arg("residual") = r.residual);
      },
      py::arg("u"), py::arg("x"), py::arg("y"));
  m.def(
      "s2_P_Q",
      [](const std::string& a, const std::string& u, double x, double y) {
        const PQ r = s2_P_Q({parse(a), parse(u), {}, std::nullopt, {}}, x, y);
        return py::dict(py::arg("P") = r.P, py::arg("Q") = r.Q, py::arg("u") = r.u,
                        py::arg("t") = r.t);
      },
      py::arg("a"), py::arg("u"), py::arg("x"), py::arg("y"));
  m.def(
      "integrate_s2_profile",
      [](const std::string& u, double t_lo, double t_hi, double t0, double a0, int steps) {
        const ProfileTable p = integrate_s2_profile(parse(u), t_lo, t_hi, t0, a0, steps);
        return std::pair{p.t(), p.a()};
      },
      py::arg("u"), py::arg("t_lo"), py::arg("t_hi"), py::arg("t0"), py::arg("a0"),
      py::arg("steps") = 2000);

  m.def(
      "solve_pde",
      [](const std::string& equation, Vec3 lambda, double u0, const std::string& boundary,
         Range x, Range y, std::pair<int, int> n) {
        PdeProblem p;
        p.equation = parse_graph_equation(equation);
        p.lambda = {lambda[0], lambda[1], lambda[2]};
        p.u = UMode::constant(u0);
        p.grid = PdeGrid{x.first, x.second, y.first, y.second, n.first, n.second};
        const Expr g = parse(boundary);
        p.boundary = perimeter_values(p.grid, [&](double px, double py) {
          return eval(g, {{Var::X, Jet2::constant(px)}, {Var::Y, Jet2::constant(py)}});
        });
        return to_json(pde_solve(p)).dump();
      },
      py::arg("equation"), py::arg("lam"), py::arg("u0"), py::arg("boundary"),
      py::arg("x_range") = Range{-1, 1}, py::arg("y_range") = Range{-1, 1},
      py::arg("grid") = std::pair{33, 33});

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end in process: (exit code, stdout, stderr).");
}
