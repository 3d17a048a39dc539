#include "qflow/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "qflow/error.hpp"

namespace qflow::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error(Errc::invalid_argument, what); }

template <class F>
auto guarded(std::string_view what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    fail(std::string(what) + ": " + e.what());
  }
}

double number(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) fail(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j, key) : fallback;
}

int integer(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer()) fail(std::string("'") + key + "' must be an integer");
  return v.get<int>();
}

PhysicalConstants constants_from(const json& j) {
  PhysicalConstants c{number_or(j, "hbar", 1.0), number_or(j, "mass", 1.0)};
  c.validate();
  return c;
}

Point2D point_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    fail("expected a [x, y] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::vector<double> split_numbers(std::string_view s) {
  std::vector<double> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    const auto tok = s.substr(0, comma);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || ptr != tok.data() + tok.size() || tok.empty()) {
      fail("bad number '" + std::string(tok) + "'");
    }
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

int as_count(double v) {
  if (v != std::floor(v) || v < 0 || v > 1e8) fail("grid counts must be non-negative integers");
  return static_cast<int>(v);
}

json number_or_null(double v) { return std::isnan(v) ? json(nullptr) : json(v); }

}  // namespace

StateSpec state_from_json(const json& j) {
  return guarded("state", [&] {
    if (!j.is_object()) fail("state must be a JSON object");
    const auto variant = j.at("variant").get<std::string>();
    const json params = j.value("params", json::object());
    StateSpec s;
    s.constants = constants_from(j);
    if (variant == "plane_wave") {
      s.variant = PlaneWaveSpec{number_or(params, "px", 0.0), number_or(params, "py", 0.0),
                                number_or(params, "amplitude_sq", 1.0)};
    } else if (variant == "oscillator") {
      s.variant = OscillatorSpec{integer(params, "nx"), integer(params, "ny"),
                                 number_or(params, "omega", 1.0)};
    } else if (variant == "central") {
      CentralFieldSpec c{integer(params, "l"), integer(params, "ml")};
      c.theta = number_or(params, "theta", c.theta);
      if (params.contains("radial")) {
        const auto& r = params.at("radial");
        const auto kind = r.at("kind").get<std::string>();
        if (kind == "gaussian") {
          c.radial = GaussianRadial{number_or(r, "width", 1.0)};
        } else if (kind == "table") {
          c.radial = TabulatedRadial(r.at("radii").get<std::vector<double>>(),
                                     r.at("values").get<std::vector<double>>());
        } else {
          fail("unknown radial kind '" + kind + "'");
        }
      }
      s.variant = std::move(c);
    } else {
      fail("unknown state variant '" + variant + "'");
    }
    s.validate();
    return s;
  });
}

json to_json(const StateSpec& s) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PlaneWaveSpec>) {
          j["variant"] = "plane_wave";
          j["params"] = {{"px", v.px}, {"py", v.py}, {"amplitude_sq", v.amplitude_sq}};
        } else if constexpr (std::is_same_v<T, OscillatorSpec>) {
          j["variant"] = "oscillator";
          j["params"] = {{"nx", v.nx.value()}, {"ny", v.ny.value()}, {"omega", v.omega}};
        } else {
          j["variant"] = "central";
          json radial;
          if (const auto* g = std::get_if<GaussianRadial>(&v.radial)) {
            radial = {{"kind", "gaussian"}, {"width", g->width}};
          } else {
            const auto& t = std::get<TabulatedRadial>(v.radial);
            radial = {{"kind", "table"},
                      {"radii", std::vector<double>(t.radii().begin(), t.radii().end())},
                      {"values", std::vector<double>(t.values().begin(), t.values().end())}};
          }
          j["params"] = {{"l", v.l.value()}, {"ml", v.ml}, {"theta", v.theta}, {"radial", radial}};
        }
      },
      s.variant);
  j["hbar"] = s.constants.hbar;
  j["mass"] = s.constants.mass;
  return j;
}

ComplexPotentialSpec potential_from_json(const json& j) {
  return guarded("potential", [&] {
    if (!j.is_object()) fail("potential must be a JSON object");
    const auto variant = j.at("variant").get<std::string>();
    const json params = j.value("params", json::object());
    ComplexPotentialSpec p;
    p.constants = constants_from(j);
    if (variant == "uniform") {
      p.variant = UniformFlow{number_or(params, "px", 0.0), number_or(params, "py", 0.0)};
    } else if (variant == "at_rest") {
      p.variant = AtRest{};
    } else if (variant == "vortex") {
      p.variant = VortexFlow{integer(params, "ml")};
    } else if (variant == "corner") {
      CornerFlow c;
      if (params.contains("A")) {
        const auto& a = params.at("A");
        if (a.is_number()) {
          c.amplitude = {a.get<double>(), 0.0};
        } else {
          const auto xy = point_from(a);
          c.amplitude = {xy.x, xy.y};
        }
      }
      c.n = integer(params, "n");
      p.variant = c;
    } else {
      fail("unknown potential variant '" + variant + "'");
    }
    p.validate();
    return p;
  });
}

json to_json(const ComplexPotentialSpec& p) {
  json j;
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, UniformFlow>) {
          j["variant"] = "uniform";
          j["params"] = {{"px", v.px}, {"py", v.py}};
        } else if constexpr (std::is_same_v<T, AtRest>) {
          j["variant"] = "at_rest";
          j["params"] = json::object();
        } else if constexpr (std::is_same_v<T, VortexFlow>) {
          j["variant"] = "vortex";
          j["params"] = {{"ml", v.ml}};
        } else {
          j["variant"] = "corner";
          j["params"] = {{"A", {v.amplitude.real(), v.amplitude.imag()}}, {"n", v.n}};
        }
      },
      p.variant);
  j["hbar"] = p.constants.hbar;
  j["mass"] = p.constants.mass;
  return j;
}

Contour contour_from_json(const json& j) {
  return guarded("contour", [&] {
    Contour c;
    for (const auto& p : j.at("points")) c.points.push_back(point_from(p));
    if (j.contains("tangents")) {
      for (const auto& t : j.at("tangents")) {
        const auto xy = point_from(t);
        c.tangents.push_back({xy.x, xy.y});
      }
    }
    const auto orient = j.value("orientation", std::string("ccw"));
    if (orient == "ccw") {
      c.orientation = Orientation::ccw;
    } else if (orient == "cw") {
      c.orientation = Orientation::cw;
    } else {
      fail("orientation must be 'ccw' or 'cw'");
    }
    c.validate();
    return c;
  });
}

json to_json(const Contour& c) {
  json pts = json::array();
  for (const auto& p : c.points) pts.push_back({p.x, p.y});
  json j{{"points", pts}, {"orientation", c.orientation == Orientation::ccw ? "ccw" : "cw"}};
  if (!c.tangents.empty()) {
    json ts = json::array();
    for (const auto& t : c.tangents) ts.push_back({t.x, t.y});
    j["tangents"] = ts;
  }
  return j;
}

Grid2D parse_grid(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) fail("grid spec needs a 'cart:' or 'annulus:' prefix");
  const auto kind = spec.substr(0, colon);
  const auto v = split_numbers(spec.substr(colon + 1));
  Grid2D g;
  if (kind == "cart") {
    if (v.size() != 6) fail("cart grid needs x0,x1,y0,y1,nx,ny");
    g.kind = CartesianGrid{v[0], v[1], v[2], v[3], as_count(v[4]), as_count(v[5])};
  } else if (kind == "annulus") {
    if (v.size() != 4) fail("annulus grid needs r0,r1,nr,nphi");
    g.kind = PolarAnnulusGrid{v[0], v[1], as_count(v[2]), as_count(v[3])};
  } else {
    fail("unknown grid kind '" + std::string(kind) + "'");
  }
  g.validate();
  return g;
}

Disk parse_disk(std::string_view spec) {
  const auto v = split_numbers(spec);
  if (v.size() != 3 || !(v[2] >= 0.0)) fail("exclusion disk needs cx,cy,r with r >= 0");
  return {{v[0], v[1]}, v[2]};
}

json to_json(const CirculationResult& r) {
  return {{"gamma", r.gamma}, {"winding", r.winding}, {"quantum_residual", r.quantum_residual}};
}

json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json jc{{"name", c.name},
            {"max_residual", number_or_null(c.max_residual)},
            {"tolerance", c.tolerance},
            {"status", c.status == CheckStatus::pass   ? "pass"
                       : c.status == CheckStatus::fail ? "fail"
                                                       : "skipped"},
            {"passed", c.passed()},
            {"points", c.points},
            {"skipped_points", c.skipped}};
    if (c.fitted_order) jc["fitted_order"] = *c.fitted_order;
    if (c.floor_flagged) jc["floor_flagged"] = true;
    if (!c.note.empty()) jc["note"] = c.note;
    checks.push_back(std::move(jc));
  }
  return {{"all_passed", r.all_passed()}, {"checks", checks}};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << format_double(row[i]);
    os << '\n';
  }
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) fail("csv: missing header");
  std::stringstream header(line);
  for (std::string col; std::getline(header, col, ',');) t.columns.push_back(col);
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      const auto tok = rest.substr(0, comma);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        fail("csv: bad number '" + std::string(tok) + "'");
      }
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (row.size() != t.columns.size()) fail("csv: row width differs from header");
    t.rows.push_back(std::move(row));
  }
  return t;
}

json table_to_json(const Table& t) {
  json rows = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < t.columns.size(); ++i) {
      if (t.columns[i] == "singular") {
        obj[t.columns[i]] = row[i] != 0.0;
      } else {
        obj[t.columns[i]] = number_or_null(row[i]);
      }
    }
    rows.push_back(std::move(obj));
  }
  return {{"columns", t.columns}, {"rows", rows}};
}

}  // namespace qflow::io
