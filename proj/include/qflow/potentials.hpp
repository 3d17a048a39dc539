#pragma once

// Velocity potential Phi, stream function Psi and complex velocity potential
// W(z) = Phi + i Psi for the catalog flows and for corner flow A z^n.

#include <numbers>
#include <variant>

#include "qflow/kinematics.hpp"
#include "qflow/states.hpp"

namespace qflow {

struct UniformFlow {
  double px = 0.0;
  double py = 0.0;
};
struct AtRest {};
struct VortexFlow {
  int ml = 0;
};
// Flow round the angle pi/n.
struct CornerFlow {
  cplx amplitude{1.0, 0.0};
  int n = 2;
};

struct ComplexPotentialSpec {
  std::variant<UniformFlow, AtRest, VortexFlow, CornerFlow> variant;
  PhysicalConstants constants;

  void validate() const;
  // Whether the potential is singular at z = 0.
  bool singular_at_origin() const noexcept {
    return std::holds_alternative<VortexFlow>(variant);
  }
};

// Branch of arg z used for the multivalued vortex potential:
// phi in (cut_angle - 2pi, cut_angle]. The default is the principal branch.
struct BranchCut {
  double cut_angle = std::numbers::pi;

  void validate() const;
  double arg(Point2D p) const;
};

struct PhiPsi {
  double phi = 0.0;
  double psi = 0.0;
};

ComplexPotentialSpec potential_of_state(const StateSpec& state);

/// W(z). Vortex flow throws Error(origin_evaluation) at z = 0.
cplx eval_W(const ComplexPotentialSpec& p, cplx z, const BranchCut& cut = {});

/// (Re W, Im W) at a point of the plane.
PhiPsi eval_Phi_Psi(const ComplexPotentialSpec& p, Point2D point, const BranchCut& cut = {});

/// dW/dz = v_x - i v_y, in closed form.
cplx complex_velocity(const ComplexPotentialSpec& p, cplx z);

/// (v_x, v_y) read off dW/dz.
Vec2 velocity_from_potential(const ComplexPotentialSpec& p, Point2D point);

/// Central-difference (dPhi/dx - dPsi/dy, dPhi/dy + dPsi/dx). Throws
/// Error(stencil_crosses_cut) when the stencil straddles the vortex branch
/// cut and Error(origin_evaluation) when it touches the origin.
PhiPsi cauchy_riemann_residual(const ComplexPotentialSpec& p, Point2D point, double h,
                               const BranchCut& cut = {});

/// Max-norm distance between velocity(state) and the velocity read off the
/// state's complex potential. Throws Error(singular_point) if the state
/// velocity is singular at the point.
double consistency_state_vs_potential(const StateSpec& state, Point2D point,
                                      const NodeThreshold& th, const BranchCut& cut = {});

}  // namespace qflow
