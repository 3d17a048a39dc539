#pragma once

// Closed-contour line integrals of the velocity field and the quantisation
// of circulation, Gamma = 2 pi ml hbar / m.

#include <span>
#include <vector>

#include "qflow/kinematics.hpp"
#include "qflow/potentials.hpp"

namespace qflow {

enum class Orientation { ccw, cw };

inline constexpr int kMinContourPoints = 16;

// A closed curve p(t) sampled at t_j = 2 pi j / N (the last point connects to
// the first). tangents[j] = dp/dt at t_j; when empty they are estimated by
// trigonometric interpolation of the points, which assumes the samples are
// uniform in a smooth periodic parametrisation.
struct Contour {
  std::vector<Point2D> points;
  std::vector<Vec2> tangents;
  Orientation orientation = Orientation::ccw;

  // Throws Error(invalid_argument): too few points, mismatched tangents,
  // non-finite entries, or an orientation disagreeing with the signed area.
  void validate() const;
};

/// Counter-clockwise circle with exact tangents.
Contour make_circle(Point2D center, double radius, int n_points);

/// Same curve traversed the other way; negates every circulation.
Contour reversed(const Contour& c);

/// The curve traversed `times` times in one parametrisation.
Contour repeated(const Contour& c, int times);

/// Derivative of the trigonometric interpolant through the points.
std::vector<Vec2> spectral_tangents(std::span<const Point2D> points);

/// Shoelace signed area (positive for counter-clockwise).
double signed_area(std::span<const Point2D> points);

/// Net number of turns of the polygon about `about`, from summed signed
/// angle increments.
int winding_number(const Contour& c, Point2D about = {});

struct CirculationResult {
  double gamma = 0.0;
  int winding = 0;
  // |gamma - 2 pi winding q hbar / m|, q the flow's circulation quantum
  // (ml for vortices, 0 for gradient flows).
  double quantum_residual = 0.0;
};

/// Periodic trapezoidal rule for the integral of v . dp/dt over t in
/// [0, 2pi). Throws Error(singular_contour) at a singular point.
double line_integral(const VelocityField& v, const Contour& c);

CirculationResult circulation(const StateSpec& state, const Contour& c, const NodeThreshold& th);
CirculationResult circulation(const ComplexPotentialSpec& p, const Contour& c);

struct StokesReport {
  std::vector<double> radii;
  std::vector<double> gammas;
  double spread = 0.0;  // max pairwise |gamma_i - gamma_j|
};

/// Circulation on origin-centred circles of each radius. Since the vorticity
/// vanishes on every annulus between two of them, the spread should be ~0.
StokesReport stokes_check(const StateSpec& state, std::span<const double> radii,
                          const NodeThreshold& th, int n_points = 256);

}  // namespace qflow
