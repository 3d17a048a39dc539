#pragma once

// JSON schemas for states, potentials and contours; grid specs; CSV tables.
//
// State:     {"variant": "plane_wave" | "oscillator" | "central",
//             "params": {...}, "hbar": 1, "mass": 1}
//   plane_wave params: {"px", "py", "amplitude_sq"}
//   oscillator params: {"nx", "ny", "omega"}
//   central params:    {"l", "ml", "theta"?,
//                       "radial"?: {"kind": "gaussian", "width"} |
//                                  {"kind": "table", "radii": [], "values": []}}
// Potential: {"variant": "uniform" | "at_rest" | "vortex" | "corner",
//             "params": {...}, "hbar": 1, "mass": 1}
//   uniform {"px", "py"}; vortex {"ml"}; corner {"A": [re, im] | re, "n"}
// Contour:   {"points": [[x, y], ...], "tangents"?: [[tx, ty], ...],
//             "orientation"?: "ccw" | "cw"}
// Grid:      "cart:x0,x1,y0,y1,nx,ny" or "annulus:r0,r1,nr,nphi";
// Disk:      "cx,cy,r"

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qflow/circulation.hpp"
#include "qflow/numerics.hpp"
#include "qflow/potentials.hpp"
#include "qflow/states.hpp"
#include "qflow/verify.hpp"

namespace qflow::io {

using nlohmann::json;

// All parse functions throw Error(invalid_argument) on malformed input.
StateSpec state_from_json(const json& j);
json to_json(const StateSpec& s);

ComplexPotentialSpec potential_from_json(const json& j);
json to_json(const ComplexPotentialSpec& p);

Contour contour_from_json(const json& j);
json to_json(const Contour& c);

Grid2D parse_grid(std::string_view spec);
Disk parse_disk(std::string_view spec);

json to_json(const CirculationResult& r);
json to_json(const VerificationReport& r);

// A numeric table with named columns. NaN marks a missing value.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

/// 17 significant digits, '.' decimal point, "nan" for NaN.
std::string format_double(double v);

void write_csv(std::ostream& os, const Table& t);
Table read_csv(std::istream& is);
json table_to_json(const Table& t);

}  // namespace qflow::io
