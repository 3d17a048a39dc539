#pragma once

// Density, probability current, the quotient velocity j / rho, and their
// finite-difference derivatives (vorticity, divergence, continuity).

#include <functional>

#include "qflow/numerics.hpp"
#include "qflow/states.hpp"

namespace qflow {

// Where the velocity quotient is treated as singular.
struct NodeThreshold {
  double epsilon_rho = 1e-12;  // density below this is a node
  // Central states with ml != 0: points with rho <= core_radius are inside
  // the vortex core. The exact origin is always singular for them.
  double core_radius = 0.0;

  void validate() const;
};

/// epsilon_rho = relative * (largest density over the grid's nodes).
NodeThreshold threshold_from_peak(const StateSpec& state, const Grid2D& grid,
                                  double relative = 1e-12, double core_radius = 0.0);

using ScalarSample = FieldSample<double>;
using VectorSample = FieldSample<Vec2>;
using VelocityField = std::function<VectorSample(Point2D)>;

double density(const StateSpec& state, Point2D p);

/// j = Re[psi^* (-i hbar grad) psi] / m.
Vec2 current(const StateSpec& state, Point2D p);

/// j / rho, flagged singular at nodes and inside the vortex core.
VectorSample velocity(const StateSpec& state, Point2D p, const NodeThreshold& th);

/// Central-difference dv_y/dx - dv_x/dy. A singular centre point yields a
/// singular sample; a singular neighbour throws Error(stencil_hits_node).
ScalarSample vorticity_fd(const VelocityField& v, Point2D p, double h);
ScalarSample vorticity_fd(const StateSpec& state, Point2D p, double h, const NodeThreshold& th);

/// Central-difference dv_x/dx + dv_y/dy, same singularity rules.
ScalarSample divergence_fd(const VelocityField& v, Point2D p, double h);
ScalarSample divergence_fd(const StateSpec& state, Point2D p, double h, const NodeThreshold& th);

/// Central-difference div j. Checks the stationary form of the continuity
/// equation: every catalog state has d(rho)/dt = 0, so this is the whole
/// residual.
double continuity_residual(const StateSpec& state, Point2D p, double h);

}  // namespace qflow
