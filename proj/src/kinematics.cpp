#include "qflow/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "qflow/error.hpp"

namespace qflow {

void NodeThreshold::validate() const {
  if (!(epsilon_rho > 0.0) || !std::isfinite(epsilon_rho)) {
    throw Error(Errc::invalid_argument, "epsilon_rho must be positive");
  }
  if (!(core_radius >= 0.0) || !std::isfinite(core_radius)) {
    throw Error(Errc::invalid_argument, "core radius must be non-negative");
  }
}

NodeThreshold threshold_from_peak(const StateSpec& state, const Grid2D& grid, double relative,
                                  double core_radius) {
  double peak = 0.0;
  for (const auto& n : grid_nodes(grid)) {
    try {
      peak = std::max(peak, density(state, n.point));
    } catch (const Error&) {
      // out-of-table points do not contribute
    }
  }
  NodeThreshold th{relative * peak, core_radius};
  if (!(th.epsilon_rho > 0.0)) th.epsilon_rho = relative;
  return th;
}

double density(const StateSpec& state, Point2D p) { return std::norm(amplitude(state, p)); }

Vec2 current(const StateSpec& state, Point2D p) {
  const cplx psi = amplitude(state, p);
  const auto g = grad_amplitude(state, p);
  const double scale = state.constants.hbar / state.constants.mass;
  // Re[psi^* (-i hbar d psi)] / m = (hbar/m) Im[psi^* d psi]
  return {scale * (std::conj(psi) * g.dx).imag(), scale * (std::conj(psi) * g.dy).imag()};
}

namespace {

bool inside_core(const StateSpec& state, Point2D p, const NodeThreshold& th) {
  const auto* c = state.central();
  return c && c->ml != 0 && std::hypot(p.x, p.y) <= th.core_radius;
}

std::string describe(Point2D p) {
  std::ostringstream os;
  os.precision(17);
  os << '(' << p.x << ", " << p.y << ')';
  return os.str();
}

// Evaluates v at the four stencil neighbours of p; throws if any is singular.
std::array<Vec2, 4> stencil_velocities(const VelocityField& v, Point2D p, double h) {
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "finite-difference step must be positive");
  std::array<Vec2, 4> out;
  const auto pts = stencil_points(p, h);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto s = v(pts[i]);
    if (s.singular()) {
      throw Error(Errc::stencil_hits_node, "stencil point " + describe(pts[i]) +
                                               " is singular (centre " + describe(p) + ")");
    }
    out[i] = *s.value;
  }
  return out;
}

VelocityField bind(const StateSpec& state, const NodeThreshold& th) {
  return [&state, th](Point2D q) { return velocity(state, q, th); };
}

}  // namespace

VectorSample velocity(const StateSpec& state, Point2D p, const NodeThreshold& th) {
  if (inside_core(state, p, th)) return VectorSample::singular_sample();
  const double rho = density(state, p);
  if (!(rho >= th.epsilon_rho)) return VectorSample::singular_sample();
  const Vec2 j = current(state, p);
  return {Vec2{j.x / rho, j.y / rho}};
}

ScalarSample vorticity_fd(const VelocityField& v, Point2D p, double h) {
  if (v(p).singular()) return ScalarSample::singular_sample();
  const auto s = stencil_velocities(v, p, h);
  return {(s[0].y - s[1].y) / (2.0 * h) - (s[2].x - s[3].x) / (2.0 * h)};
}

ScalarSample vorticity_fd(const StateSpec& state, Point2D p, double h, const NodeThreshold& th) {
  return vorticity_fd(bind(state, th), p, h);
}

ScalarSample divergence_fd(const VelocityField& v, Point2D p, double h) {
  if (v(p).singular()) return ScalarSample::singular_sample();
  const auto s = stencil_velocities(v, p, h);
  return {(s[0].x - s[1].x) / (2.0 * h) + (s[2].y - s[3].y) / (2.0 * h)};
}

ScalarSample divergence_fd(const StateSpec& state, Point2D p, double h, const NodeThreshold& th) {
  return divergence_fd(bind(state, th), p, h);
}

double continuity_residual(const StateSpec& state, Point2D p, double h) {
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "finite-difference step must be positive");
  const auto jx = [&](Point2D q) { return current(state, q).x; };
  const auto jy = [&](Point2D q) { return current(state, q).y; };
  return partial_x(jx, p, h) + partial_y(jy, p, h);
}

}  // namespace qflow
