#include "qflow/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "qflow/circulation.hpp"
#include "qflow/error.hpp"
#include "qflow/io.hpp"
#include "qflow/kinematics.hpp"
#include "qflow/potentials.hpp"
#include "qflow/verify.hpp"

namespace qflow::cli {

namespace {

using io::json;

// Raised for problems with the command line or its inputs (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string state;
  std::string potential;
  std::string grid;
  std::vector<std::string> excludes;
  std::string out;
  std::string format = "csv";
  double h = 1e-4;
  double cut = std::numbers::pi;
  double node_rel = 1e-12;
  std::optional<double> core_radius;

  std::string which;

  std::string center = "0,0";
  double radius = 1.0;
  int points = 256;
  std::string contour;

  std::string suite = "all";
  std::vector<double> h_seq;
  std::vector<double> radii;
  Tolerances tol;
};

json load_json(const std::string& source) {
  const auto first = source.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (source[first] == '{' || source[first] == '[')) {
      return json::parse(source);
    }
    std::ifstream in(source);
    if (!in) throw UsageError("cannot read '" + source + "'");
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("malformed JSON in '" + source + "': " + e.what());
  }
}

struct Source {
  std::optional<StateSpec> state;
  std::optional<ComplexPotentialSpec> potential;
};

Source load_source(const Options& o, bool allow_potential) {
  if (o.state.empty() == o.potential.empty()) {
    throw UsageError(allow_potential ? "give exactly one of --state or --potential"
                                     : "--state is required");
  }
  if (!o.potential.empty() && !allow_potential) throw UsageError("--potential is not accepted here");
  Source s;
  if (!o.state.empty()) s.state = io::state_from_json(load_json(o.state));
  if (!o.potential.empty()) s.potential = io::potential_from_json(load_json(o.potential));
  return s;
}

Grid2D load_grid(const Options& o, const Source& src) {
  Grid2D g;
  if (!o.grid.empty()) {
    g = io::parse_grid(o.grid);
  } else if ((src.state && src.state->central()) ||
             (src.potential && src.potential->singular_at_origin())) {
    g = io::parse_grid("annulus:1,2,10,100");
  } else {
    g = io::parse_grid("cart:-3,3,-3,3,32,32");
  }
  for (const auto& d : o.excludes) g.exclusions.push_back(io::parse_disk(d));
  return g;
}

double core_radius(const Options& o) { return o.core_radius.value_or(10.0 * o.h); }

// Sends text to --out or to the given stream.
void emit(const Options& o, std::ostream& out, const std::string& text) {
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + o.out + "'");
  f << text;
  if (!f) throw UsageError("failed writing '" + o.out + "'");
}

std::vector<std::string> value_columns(const std::string& which) {
  if (which == "rho") return {"rho"};
  if (which == "current") return {"jx", "jy"};
  if (which == "velocity") return {"vx", "vy"};
  if (which == "phi") return {"Phi"};
  if (which == "psi") return {"Psi"};
  if (which == "W") return {"Phi", "Psi"};
  if (which == "vorticity") return {"omega"};
  if (which == "divergence") return {"div"};
  throw UsageError("unknown field '" + which + "'");
}

// Values at one point plus the singular flag. Singularity errors become a
// flagged row; anything else propagates.
struct Row {
  std::vector<double> values;
  bool singular = false;
};

int cmd_field(const Options& o, std::ostream& out, std::ostream& err) {
  const auto cols = value_columns(o.which);
  const Source src = load_source(o, true);
  const Grid2D grid = load_grid(o, src);
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
  if (!(o.h > 0.0)) throw UsageError("--h must be positive");
  const BranchCut cut{o.cut};
  cut.validate();

  const double nan = std::nan("");
  const std::vector<double> blank(cols.size(), nan);
  std::function<Row(Point2D)> eval;
  if (src.state) {
    const StateSpec& s = *src.state;
    const NodeThreshold th = threshold_from_peak(s, grid, o.node_rel, core_radius(o));
    const auto pot = potential_of_state(s);
    eval = [&, th, pot](Point2D p) -> Row {
      const bool node = velocity(s, p, th).singular();
      if (o.which == "rho") return {{density(s, p)}, density(s, p) < th.epsilon_rho};
      if (o.which == "current") {
        const Vec2 j = current(s, p);
        return {{j.x, j.y}, node};
      }
      if (o.which == "velocity") {
        const auto v = velocity(s, p, th);
        return v.singular() ? Row{blank, true} : Row{{v.value->x, v.value->y}, false};
      }
      if (o.which == "vorticity" || o.which == "divergence") {
        const auto w = o.which == "vorticity" ? vorticity_fd(s, p, o.h, th)
                                              : divergence_fd(s, p, o.h, th);
        return w.singular() ? Row{blank, true} : Row{{*w.value}, false};
      }
      const auto pp = eval_Phi_Psi(pot, p, cut);
      if (o.which == "phi") return {{pp.phi}, node};
      if (o.which == "psi") return {{pp.psi}, node};
      return {{pp.phi, pp.psi}, node};
    };
  } else {
    const ComplexPotentialSpec& pot = *src.potential;
    const VelocityField vf = [&pot](Point2D q) -> VectorSample {
      try {
        return {velocity_from_potential(pot, q)};
      } catch (const Error& e) {
        if (e.code() == Errc::origin_evaluation) return VectorSample::singular_sample();
        throw;
      }
    };
    if (o.which == "rho" || o.which == "current") {
      throw UsageError("field '" + o.which + "' needs --state");
    }
    eval = [&, vf](Point2D p) -> Row {
      if (o.which == "velocity") {
        const auto v = vf(p);
        return v.singular() ? Row{blank, true} : Row{{v.value->x, v.value->y}, false};
      }
      if (o.which == "vorticity" || o.which == "divergence") {
        const auto w = o.which == "vorticity" ? vorticity_fd(vf, p, o.h) : divergence_fd(vf, p, o.h);
        return w.singular() ? Row{blank, true} : Row{{*w.value}, false};
      }
      const auto pp = eval_Phi_Psi(pot, p, cut);
      if (o.which == "phi") return {{pp.phi}, false};
      if (o.which == "psi") return {{pp.psi}, false};
      return {{pp.phi, pp.psi}, false};
    };
  }

  const auto rows = sample_grid<Row>(grid, [&](Point2D p) { return FieldSample<Row>{eval(p)}; });

  io::Table table;
  table.columns = grid.is_polar() ? std::vector<std::string>{"r", "phi"}
                                  : std::vector<std::string>{"x", "y"};
  table.columns.insert(table.columns.end(), cols.begin(), cols.end());
  table.columns.push_back("singular");
  for (const auto& r : rows) {
    if (r.error && !r.error->is_singularity()) {
      err << "evaluation failed at (" << r.node.point.x << ", " << r.node.point.y
          << "): " << r.error->what() << '\n';
      return kEvaluationError;
    }
    std::vector<double> line{r.node.u, r.node.v};
    const Row value = r.error ? Row{blank, true} : *r.sample.value;
    line.insert(line.end(), value.values.begin(), value.values.end());
    line.push_back(value.singular ? 1.0 : 0.0);
    table.rows.push_back(std::move(line));
  }

  std::ostringstream text;
  if (o.format == "csv") {
    io::write_csv(text, table);
  } else {
    auto j = io::table_to_json(table);
    j["field"] = o.which;
    text << j.dump(2) << '\n';
  }
  emit(o, out, text.str());
  return kOk;
}

Point2D parse_point(const std::string& s) {
  const auto d = io::parse_disk(s + ",0");
  return d.center;
}

int cmd_circulation(const Options& o, std::ostream& out, std::ostream&) {
  const Source src = load_source(o, true);
  const Contour contour = o.contour.empty()
                              ? make_circle(parse_point(o.center), o.radius, o.points)
                              : io::contour_from_json(load_json(o.contour));
  CirculationResult r;
  if (src.state) {
    // Contours have no grid; the node threshold is absolute here.
    const NodeThreshold th{o.node_rel, core_radius(o)};
    r = circulation(*src.state, contour, th);
  } else {
    r = circulation(*src.potential, contour);
  }
  emit(o, out, io::to_json(r).dump(2) + "\n");
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const Source src = load_source(o, false);
  const Grid2D grid = load_grid(o, src);
  Tolerances tol = o.tol;
  tol.fd_step = o.h;
  tol.node_relative = o.node_rel;
  if (o.core_radius) tol.core_radius_steps = *o.core_radius / o.h;
  if (!o.h_seq.empty()) tol.convergence_steps = o.h_seq;
  if (!o.radii.empty()) tol.stokes_radii = o.radii;
  const auto report = verify(*src.state, grid, parse_suite(o.suite), tol, BranchCut{o.cut});
  emit(o, out, io::to_json(report).dump(2) + "\n");
  return report.all_passed() ? kOk : kVerificationFailed;
}

void add_common(CLI::App* cmd, Options& o) {
  cmd->add_option("--state", o.state, "State JSON file, or inline JSON");
  cmd->add_option("--out", o.out, "Output path (default: standard output)");
  cmd->add_option("--h", o.h, "Finite-difference step")->capture_default_str();
  cmd->add_option("--cut", o.cut, "Branch cut angle in (-pi, pi]")->capture_default_str();
  cmd->add_option("--node-rel", o.node_rel,
                  "Node threshold relative to the peak density on the grid")
      ->capture_default_str();
  cmd->add_option("--core-radius", o.core_radius, "Vortex core radius (default 10*h)");
}

void add_grid(CLI::App* cmd, Options& o) {
  cmd->add_option("--grid", o.grid, "cart:x0,x1,y0,y1,nx,ny or annulus:r0,r1,nr,nphi");
  cmd->add_option("--exclude", o.excludes, "Exclusion disk cx,cy,r (repeatable)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Quantum flow fields: velocity, potentials, circulation, verification", "qflow"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "Print this help message and exit");

  auto* field = app.add_subcommand("field", "Evaluate a field on a grid");
  add_common(field, o);
  add_grid(field, o);
  field->add_option("--potential", o.potential, "Complex potential JSON file, or inline JSON");
  field->add_option("which,--which", o.which,
                    "rho|current|velocity|phi|psi|W|vorticity|divergence")
      ->required();
  field->add_option("--format", o.format, "csv or json")->capture_default_str();

  auto* circ = app.add_subcommand("circulation", "Circulation round a closed contour");
  add_common(circ, o);
  circ->add_option("--potential", o.potential, "Complex potential JSON file, or inline JSON");
  circ->add_option("--center", o.center, "Circle centre x,y")->capture_default_str();
  circ->add_option("--radius", o.radius, "Circle radius")->capture_default_str();
  circ->add_option("--points", o.points, "Circle sample count")->capture_default_str();
  circ->add_option("--contour", o.contour, "Contour JSON file (replaces the circle)");

  auto* ver = app.add_subcommand("verify", "Run verification suites");
  add_common(ver, o);
  add_grid(ver, o);
  ver->add_option("--suite", o.suite,
                  "irrotational|cauchy_riemann|continuity|quantization|consistency|all")
      ->capture_default_str();
  ver->add_option("--h-seq", o.h_seq, "Step sequence for the convergence fit")->delimiter(',');
  ver->add_option("--radii", o.radii, "Circle radii for quantization")->delimiter(',');
  ver->add_option("--tol-vorticity", o.tol.vorticity)->capture_default_str();
  ver->add_option("--tol-continuity", o.tol.continuity)->capture_default_str();
  ver->add_option("--tol-cauchy-riemann", o.tol.cauchy_riemann)->capture_default_str();
  ver->add_option("--tol-consistency", o.tol.consistency)->capture_default_str();
  ver->add_option("--tol-quantization", o.tol.quantization_relative)->capture_default_str();
  ver->add_option("--tol-circulation", o.tol.circulation_absolute)->capture_default_str();
  ver->add_option("--tol-stokes", o.tol.stokes_spread)->capture_default_str();
  ver->add_option("--tol-order", o.tol.min_order)->capture_default_str();
  ver->add_option("--tol-floor", o.tol.roundoff_floor)->capture_default_str();
  ver->add_option("--circle-points", o.tol.circle_points)->capture_default_str();

  std::vector<std::string> argv_tail(args.begin() + (args.empty() ? 0 : 1), args.end());
  std::reverse(argv_tail.begin(), argv_tail.end());  // CLI11 consumes from the back
  try {
    app.parse(argv_tail);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsageError;
  }

  try {
    if (*field) return cmd_field(o, out, err);
    if (*circ) return cmd_circulation(o, out, err);
    return cmd_verify(o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == Errc::invalid_argument || e.code() == Errc::degree_out_of_range
               ? kUsageError
               : kEvaluationError;
  }
}

}  // namespace qflow::cli
