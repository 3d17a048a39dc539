#include "qflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qflow/error.hpp"

namespace qflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Accumulates max |residual| over points, skipping singularities.
struct MaxTracker {
  double max = 0.0;
  std::size_t points = 0;
  std::size_t skipped = 0;

  template <class F>
  void visit(F&& f) {
    try {
      const std::optional<double> r = f();
      if (!r) {
        ++skipped;
        return;
      }
      max = std::max(max, std::fabs(*r));
      ++points;
    } catch (const Error& e) {
      if (!e.is_singularity()) throw;
      ++skipped;
    }
  }
};

VerificationCheck finish(std::string name, const MaxTracker& t, double tolerance) {
  VerificationCheck c;
  c.name = std::move(name);
  c.max_residual = t.max;
  c.tolerance = tolerance;
  c.points = t.points;
  c.skipped = t.skipped;
  if (t.points == 0) {
    c.status = CheckStatus::skipped;
    c.note = "no non-singular points";
  } else {
    c.status = t.max <= tolerance ? CheckStatus::pass : CheckStatus::fail;
  }
  return c;
}

struct Context {
  const StateSpec& state;
  std::vector<GridNode> nodes;
  NodeThreshold th;
  const Tolerances& tol;
  const BranchCut& cut;
};

void irrotational(const Context& ctx, VerificationReport& out) {
  MaxTracker at_h;
  for (const auto& n : ctx.nodes) {
    at_h.visit([&]() -> std::optional<double> {
      return vorticity_fd(ctx.state, n.point, ctx.tol.fd_step, ctx.th).value;
    });
  }
  out.checks.push_back(finish("vorticity", at_h, ctx.tol.vorticity));

  // Order of |omega| as h shrinks, over points evaluable at every step.
  const auto& steps = ctx.tol.convergence_steps;
  std::vector<std::vector<double>> values(steps.size());
  std::size_t used = 0;
  for (const auto& n : ctx.nodes) {
    std::vector<double> row;
    try {
      for (double h : steps) {
        const auto w = vorticity_fd(ctx.state, n.point, h, ctx.th);
        if (w.singular()) break;
        row.push_back(std::fabs(*w.value));
      }
    } catch (const Error& e) {
      if (!e.is_singularity()) throw;
    }
    if (row.size() != steps.size()) continue;
    for (std::size_t i = 0; i < steps.size(); ++i) values[i].push_back(row[i]);
    ++used;
  }

  VerificationCheck conv;
  conv.name = "vorticity_convergence";
  conv.tolerance = ctx.tol.min_order;
  conv.points = used;
  conv.skipped = ctx.nodes.size() - used;
  if (used == 0) {
    conv.status = CheckStatus::skipped;
    conv.note = "no point evaluable at every step";
    out.checks.push_back(conv);
    return;
  }
  const auto report = convergence_order(
      steps,
      [&](double h) {
        const auto i = std::find(steps.begin(), steps.end(), h) - steps.begin();
        return *std::max_element(values[i].begin(), values[i].end());
      },
      ctx.tol.roundoff_floor);
  conv.max_residual = report.residuals.back();
  conv.floor_flagged = report.floor_flagged;
  if (report.floor_flagged) {
    conv.status = CheckStatus::pass;
    conv.note = "residuals at roundoff floor; order not fitted";
  } else {
    conv.fitted_order = report.fitted_order;
    conv.status = report.fitted_order >= ctx.tol.min_order ? CheckStatus::pass : CheckStatus::fail;
  }
  out.checks.push_back(conv);
}

void cauchy_riemann(const Context& ctx, VerificationReport& out) {
  const auto pot = potential_of_state(ctx.state);
  MaxTracker t;
  for (const auto& n : ctx.nodes) {
    t.visit([&]() -> std::optional<double> {
      const auto r = cauchy_riemann_residual(pot, n.point, ctx.tol.fd_step, ctx.cut);
      return std::max(std::fabs(r.phi), std::fabs(r.psi));
    });
  }
  out.checks.push_back(finish("cauchy_riemann", t, ctx.tol.cauchy_riemann));
}

void continuity(const Context& ctx, VerificationReport& out) {
  MaxTracker t;
  for (const auto& n : ctx.nodes) {
    t.visit([&]() -> std::optional<double> {
      if (velocity(ctx.state, n.point, ctx.th).singular()) return std::nullopt;
      return continuity_residual(ctx.state, n.point, ctx.tol.fd_step);
    });
  }
  out.checks.push_back(finish("continuity", t, ctx.tol.continuity));
}

void quantization(const Context& ctx, VerificationReport& out) {
  const auto& k = ctx.state.constants;
  const int q = circulation_quantum(ctx.state);
  const double expected = kTwoPi * q * k.hbar / k.mass;
  const int npts = ctx.tol.circle_points;

  VerificationCheck quant;
  quant.name = "quantization";
  quant.tolerance = q != 0 ? ctx.tol.quantization_relative : ctx.tol.circulation_absolute;
  std::vector<double> gammas;
  try {
    for (double r : ctx.tol.stokes_radii) {
      const auto res = circulation(ctx.state, make_circle({}, r, npts), ctx.th);
      gammas.push_back(res.gamma);
      const double err = q != 0 ? std::fabs(res.gamma - expected) / std::fabs(expected)
                                : std::fabs(res.gamma);
      quant.max_residual = std::max(quant.max_residual, err);
      ++quant.points;
    }
  } catch (const Error& e) {
    if (!e.is_singularity()) throw;
    quant.status = CheckStatus::skipped;
    quant.note = std::string("contour crosses a singular point: ") + e.what();
    out.checks.push_back(quant);
    return;
  }
  quant.status = quant.max_residual <= quant.tolerance ? CheckStatus::pass : CheckStatus::fail;
  out.checks.push_back(quant);

  VerificationCheck spread;
  spread.name = "stokes_spread";
  spread.tolerance = ctx.tol.stokes_spread;
  spread.points = gammas.size();
  if (gammas.size() >= 2) {
    const auto [lo, hi] = std::minmax_element(gammas.begin(), gammas.end());
    spread.max_residual = *hi - *lo;
    spread.status = spread.max_residual <= spread.tolerance ? CheckStatus::pass : CheckStatus::fail;
  } else {
    spread.status = CheckStatus::skipped;
    spread.note = "needs at least two radii";
  }
  out.checks.push_back(spread);

  // A circle that does not encircle the origin carries no circulation.
  VerificationCheck outside;
  outside.name = "non_encircling";
  outside.tolerance = ctx.tol.circulation_absolute;
  const double rmax = *std::max_element(ctx.tol.stokes_radii.begin(), ctx.tol.stokes_radii.end());
  try {
    const auto res = circulation(ctx.state, make_circle({3.0 * rmax, 0.0}, rmax, npts), ctx.th);
    outside.max_residual = std::fabs(res.gamma);
    outside.points = 1;
    outside.status = outside.max_residual <= outside.tolerance ? CheckStatus::pass : CheckStatus::fail;
  } catch (const Error& e) {
    if (!e.is_singularity()) throw;
    outside.status = CheckStatus::skipped;
    outside.note = std::string("contour crosses a singular point: ") + e.what();
  }
  out.checks.push_back(outside);
}

void consistency(const Context& ctx, VerificationReport& out) {
  MaxTracker t;
  for (const auto& n : ctx.nodes) {
    t.visit([&]() -> std::optional<double> {
      return consistency_state_vs_potential(ctx.state, n.point, ctx.th, ctx.cut);
    });
  }
  out.checks.push_back(finish("consistency", t, ctx.tol.consistency));
}

}  // namespace

Suite parse_suite(std::string_view name) {
  for (auto s : {Suite::irrotational, Suite::cauchy_riemann, Suite::continuity,
                 Suite::quantization, Suite::consistency, Suite::all}) {
    if (name == to_string(s)) return s;
  }
  throw Error(Errc::invalid_argument, "unknown verification suite '" + std::string(name) + "'");
}

std::string_view to_string(Suite s) noexcept {
  switch (s) {
    case Suite::irrotational: return "irrotational";
    case Suite::cauchy_riemann: return "cauchy_riemann";
    case Suite::continuity: return "continuity";
    case Suite::quantization: return "quantization";
    case Suite::consistency: return "consistency";
    case Suite::all: return "all";
  }
  return "all";
}

bool VerificationReport::all_passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerificationCheck& c) { return c.passed(); });
}

VerificationReport verify(const StateSpec& state, const Grid2D& grid, Suite suite,
                          const Tolerances& tol, const BranchCut& cut) {
  state.validate();
  cut.validate();
  const double core = tol.core_radius_steps * tol.fd_step;
  Context ctx{state, grid_nodes(grid), threshold_from_peak(state, grid, tol.node_relative, core),
              tol, cut};

  VerificationReport report;
  const auto wants = [&](Suite s) { return suite == Suite::all || suite == s; };
  if (wants(Suite::irrotational)) irrotational(ctx, report);
  if (wants(Suite::cauchy_riemann)) cauchy_riemann(ctx, report);
  if (wants(Suite::continuity)) continuity(ctx, report);
  if (wants(Suite::quantization)) quantization(ctx, report);
  if (wants(Suite::consistency)) consistency(ctx, report);
  return report;
}

}  // namespace qflow
