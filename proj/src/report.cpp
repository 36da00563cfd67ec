#include "h3surf/report.hpp"

#include <unistd.h>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "h3surf/error.hpp"

namespace h3surf {

namespace {

std::string format_g17(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  std::string s = buf;
  // Keep floats recognisable as floats.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

bool is_scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

void write_value(std::string& out, const Json& j, int depth) {
  const std::string pad(static_cast<std::size_t>(depth + 1) * 2, ' ');
  const std::string close_pad(static_cast<std::size_t>(depth) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::null:
      out += "null";
      return;
    case Json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      return;
    case Json::value_t::number_integer:
      out += std::to_string(j.get<std::int64_t>());
      return;
    case Json::value_t::number_unsigned:
      out += std::to_string(j.get<std::uint64_t>());
      return;
    case Json::value_t::number_float:
      out += format_g17(j.get<double>());
      return;
    case Json::value_t::string:
      out += j.dump();
      return;
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
      out += flat ? "[" : "[\n";
      bool first = true;
      for (const auto& e : j) {
        if (!first) out += flat ? ", " : ",\n";
        first = false;
        if (!flat) out += pad;
        write_value(out, e, depth + 1);
      }
      out += flat ? "]" : "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(k).dump() + ": ";
        write_value(out, v, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    default:
      throw InvalidArgument("format_json: unsupported value type");
  }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json vec(const FrameVector& v) { return Json::array({v.a1, v.a2, v.a3}); }

}  // namespace

std::string format_json(const Json& j) {
  std::string out;
  write_value(out, j, 0);
  out += "\n";
  return out;
}

std::string format_shortest(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_atomic(const std::string& path, std::string_view content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot open '" + tmp.string() + "' for writing");
    f.write(content.data(), static_cast<std::streamsize>(content.size()));
    f.flush();
    if (!f) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error("write to '" + tmp.string() + "' failed");
    }
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error("cannot rename report into '" + path + "'");
  }
}

std::map<std::string, std::string> parse_config(std::string_view text) {
  std::map<std::string, std::string> out;
  std::size_t offset = 0;
  const auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  while (offset <= text.size()) {
    auto nl = text.find('\n', offset);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(offset, nl - offset);
    const std::size_t line_start = offset;
    offset = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("config: expected 'key = value'", line_start);
    const auto key = trim(line.substr(0, eq));
    if (key.empty()) throw ParseError("config: empty key", line_start);
    out[std::string(key)] = std::string(trim(line.substr(eq + 1)));
  }
  return out;
}

Json to_json(const Chart& chart) {
  Json j;
  j["kind"] = chart_kind_name(chart.kind());
  const auto& e = chart.expressions();
  switch (chart.kind()) {
    case ChartKind::Graph:
      j["f"] = e[0].to_string();
      break;
    case ChartKind::Parametric:
      j["x"] = e[0].to_string();
      j["y"] = e[1].to_string();
      j["z"] = e[2].to_string();
      break;
    case ChartKind::RuledS1:
      j["a"] = e[0].to_string();
      break;
    case ChartKind::RuledS2:
      j["a"] = e[0].to_string();
      j["u"] = e[1].to_string();
      break;
  }
  if (chart.constant()) j["c"] = *chart.constant();
  if (const auto& g = chart.isometry()) {
    j["isometry"] = {{"theta", g->theta}, {"a", g->a}, {"b", g->b}, {"c", g->c}};
  }
  j["parameters"] = Json::array({chart.u_name(), chart.v_name()});
  j["orientation"] = chart.orientation();
  return j;
}

Json to_json(const GridSpec& grid) {
  return {{"u_range", Json::array({grid.u0, grid.u1})},
          {"v_range", Json::array({grid.v0, grid.v1})},
          {"size", Json::array({grid.nu, grid.nv})},
          {"h", grid.step()}};
}

Json to_json(const FiniteTypeReport& r, bool with_points) {
  Json j;
  Json lambda = Json::array();
  for (const auto& l : r.lambda) lambda.push_back(optional_number(l));
  j["lambda"] = lambda;
  j["residual_rms"] = Json::array({r.residual[0], r.residual[1], r.residual[2]});
  j["used_points"] = Json::array({r.used_points[0], r.used_points[1], r.used_points[2]});
  j["eps_coord"] = r.eps_coord;
  j["classification"] = finite_type_class_name(r.classification);
  j["distinct_eigenvalues"] = r.distinct_eigenvalues;
  if (with_points) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
      pts.push_back({{"param", Json::array({p.param.u, p.param.v})},
                     {"r", Json::array({p.r[0], p.r[1], p.r[2]})},
                     {"lap", Json::array({p.lap[0], p.lap[1], p.lap[2]})}});
    }
    j["points"] = pts;
  }
  return j;
}

Json to_json(const BeltramiIdentityReport& r) {
  return {{"tension_minus_2HN", {{"max", r.tension_max}, {"rms", r.tension_rms}}},
          {"scalar_laplacian_minus_2HN", {{"max", r.coord_max}, {"rms", r.coord_rms}}},
          {"max_abs_H", r.max_abs_H},
          {"points", r.points}};
}

Json to_json(const S1Classification& c) {
  Json j;
  j["case"] = s1_case_name(c.kind);
  j["max_abs_H"] = c.max_abs_H;
  j["max_abs_aa_prime_plus_t"] = c.max_cylinder_defect;
  j["c"] = optional_number(c.c);
  if (c.fit) {
    j["finite_type"] = to_json(*c.fit);
    j["lambda_matches_inverse_c"] = c.lambda_consistent;
  }
  return j;
}

Json to_json(const S2ResidualReport& r, bool with_points) {
  Json j;
  j["lambda"] = Json::array({r.lambda[0], r.lambda[1], r.lambda[2]});
  j["fitted"] = r.fitted;
  j["max_abs_residual"] = Json::array({r.max_abs[0], r.max_abs[1], r.max_abs[2]});
  j["rms_residual"] = Json::array({r.rms[0], r.rms[1], r.rms[2]});
  j["max_abs_H_minus_simplified"] = r.max_H_gap;
  if (with_points) {
    Json pts = Json::array();
    for (const auto& p : r.points) {
      pts.push_back({{"x", p.x},
                     {"y", p.y},
                     {"t", p.t},
                     {"f", p.f},
                     {"u", p.u},
                     {"P", p.P},
                     {"W", p.W},
                     {"H", p.H},
                     {"residual", Json::array({p.residual[0], p.residual[1], p.residual[2]})}});
    }
    j["points"] = pts;
  }
  return j;
}

Json to_json(const PdeSolution& s) {
  Json rows = Json::array();
  for (int j = 0; j < s.grid.ny; ++j) {
    Json row = Json::array();
    for (int i = 0; i < s.grid.nx; ++i) row.push_back(s.at(i, j));
    rows.push_back(row);
  }
  return {{"x_range", Json::array({s.grid.x0, s.grid.x1})},
          {"y_range", Json::array({s.grid.y0, s.grid.y1})},
          {"size", Json::array({s.grid.nx, s.grid.ny})},
          {"residual", s.residual},
          {"iterations", s.iterations},
          {"residual_history", s.residual_history},
          {"f", rows}};
}

Json to_json(const SurfaceData& d) {
  Json j;
  j["param"] = Json::array({d.param.u, d.param.v});
  j["point"] = Json::array({d.point.x, d.point.y, d.point.z});
  j["E"] = d.first.E;
  j["F"] = d.first.F;
  j["G"] = d.first.G;
  j["W2"] = d.first.W2;
  j["L"] = d.second.L;
  j["M"] = d.second.M;
  j["N"] = d.second.N;
  j["normal"] = vec(d.normal);
  j["H"] = d.H;
  if (d.P) j["P"] = *d.P;
  if (d.Q) j["Q"] = *d.Q;
  return j;
}

std::string export_csv(const Chart& chart, const GridSpec& grid) {
  grid.validate(chart);
  const double h = grid.step();
  std::string out = "u,v,x,y,z,E,F,G,W2,H,lap_r1,lap_r2,lap_r3\n";
  for (int j = 0; j < grid.nv; ++j) {
    for (int i = 0; i < grid.nu; ++i) {
      const ParamPoint p = grid.at(i, j);
      const SurfaceData d = surface_data(chart, p);
      const auto lap = beltrami_coords(chart, p, h);
      const double cols[] = {p.u,       p.v,       d.point.x, d.point.y, d.point.z,
                             d.first.E, d.first.F, d.first.G, d.first.W2, d.H,
                             lap[0],    lap[1],    lap[2]};
      bool first = true;
      for (double c : cols) {
        if (!first) out += ',';
        first = false;
        out += format_shortest(c);
      }
      out += '\n';
    }
  }
  return out;
}

}  // namespace h3surf
