#pragma once

#include <map>
#include <string>
#include <string_view>

#include <json.hpp>

#include "h3surf/graph_pde.hpp"
#include "h3surf/laplace.hpp"
#include "h3surf/ruled.hpp"
#include "h3surf/surface.hpp"

namespace h3surf {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Deterministic JSON text: keys sorted, two-space indent, floats with 17
/// significant digits, non-finite floats as null, trailing newline.
std::string format_json(const Json& j);

/// Shortest decimal that round-trips to the same double.
std::string format_shortest(double v);

/// Writes to a temporary file next to `path`, then renames it into place.
void write_atomic(const std::string& path, std::string_view content);

/// `key = value` lines; `#` starts a comment. Throws ParseError on a line
/// without `=`.
std::map<std::string, std::string> parse_config(std::string_view text);

Json to_json(const Chart& chart);
Json to_json(const GridSpec& grid);
Json to_json(const FiniteTypeReport& r, bool with_points = false);
Json to_json(const BeltramiIdentityReport& r);
Json to_json(const S1Classification& c);
Json to_json(const S2ResidualReport& r, bool with_points = false);
Json to_json(const PdeSolution& s);
Json to_json(const SurfaceData& d);

/// CSV rows u, v, x, y, z, E, F, G, W2, H, lap_r1, lap_r2, lap_r3 over the
/// grid, Laplacians from scalar_beltrami.
std::string export_csv(const Chart& chart, const GridSpec& grid);

}  // namespace h3surf
