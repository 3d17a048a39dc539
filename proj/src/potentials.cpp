#include "qflow/potentials.hpp"

#include <cmath>

#include "qflow/error.hpp"

namespace qflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

cplx to_complex(Point2D p) { return {p.x, p.y}; }

cplx int_pow(cplx z, int n) {
  cplx out{1.0, 0.0};
  for (int i = 0; i < n; ++i) out *= z;
  return out;
}

// ml hbar / m
double vortex_strength(const ComplexPotentialSpec& p, const VortexFlow& v) {
  return v.ml * p.constants.hbar / p.constants.mass;
}

void require_off_origin(cplx z) {
  if (z == cplx{0.0, 0.0}) {
    throw Error(Errc::origin_evaluation, "vortex potential is singular at the origin");
  }
}

}  // namespace

void ComplexPotentialSpec::validate() const {
  constants.validate();
  if (const auto* c = std::get_if<CornerFlow>(&variant)) {
    if (c->n < 1) throw Error(Errc::invalid_argument, "corner flow needs n >= 1");
    if (!std::isfinite(c->amplitude.real()) || !std::isfinite(c->amplitude.imag())) {
      throw Error(Errc::invalid_argument, "corner flow amplitude must be finite");
    }
  }
}

void BranchCut::validate() const {
  if (!(cut_angle > -std::numbers::pi && cut_angle <= std::numbers::pi)) {
    throw Error(Errc::invalid_argument, "branch cut angle must lie in (-pi, pi]");
  }
}

double BranchCut::arg(Point2D p) const {
  double phi = std::atan2(p.y, p.x);
  if (phi > cut_angle) phi -= kTwoPi;
  if (phi <= cut_angle - kTwoPi) phi += kTwoPi;
  return phi;
}

ComplexPotentialSpec potential_of_state(const StateSpec& state) {
  return std::visit(
      [&](const auto& s) -> ComplexPotentialSpec {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlaneWaveSpec>) {
          return {UniformFlow{s.px, s.py}, state.constants};
        } else if constexpr (std::is_same_v<T, OscillatorSpec>) {
          return {AtRest{}, state.constants};
        } else {
          return {VortexFlow{s.ml}, state.constants};
        }
      },
      state.variant);
}

cplx eval_W(const ComplexPotentialSpec& p, cplx z, const BranchCut& cut) {
  const double m = p.constants.mass;
  return std::visit(
      [&](const auto& f) -> cplx {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformFlow>) {
          return cplx{f.px, -f.py} * z / m;
        } else if constexpr (std::is_same_v<T, AtRest>) {
          return {0.0, 0.0};
        } else if constexpr (std::is_same_v<T, VortexFlow>) {
          require_off_origin(z);
          // -i k log z = k phi - i k log|z|
          const double k = vortex_strength(p, f);
          const double phi = cut.arg({z.real(), z.imag()});
          return {k * phi, -k * std::log(std::abs(z))};
        } else {
          return f.amplitude * int_pow(z, f.n);
        }
      },
      p.variant);
}

PhiPsi eval_Phi_Psi(const ComplexPotentialSpec& p, Point2D point, const BranchCut& cut) {
  const cplx w = eval_W(p, to_complex(point), cut);
  return {w.real(), w.imag()};
}

cplx complex_velocity(const ComplexPotentialSpec& p, cplx z) {
  const double m = p.constants.mass;
  return std::visit(
      [&](const auto& f) -> cplx {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, UniformFlow>) {
          return cplx{f.px, -f.py} / m;
        } else if constexpr (std::is_same_v<T, AtRest>) {
          return {0.0, 0.0};
        } else if constexpr (std::is_same_v<T, VortexFlow>) {
          require_off_origin(z);
          return cplx{0.0, -vortex_strength(p, f)} / z;
        } else {
          return static_cast<double>(f.n) * f.amplitude * int_pow(z, f.n - 1);
        }
      },
      p.variant);
}

Vec2 velocity_from_potential(const ComplexPotentialSpec& p, Point2D point) {
  const cplx w = complex_velocity(p, to_complex(point));
  return {w.real(), -w.imag()};
}

PhiPsi cauchy_riemann_residual(const ComplexPotentialSpec& p, Point2D point, double h,
                               const BranchCut& cut) {
  if (!(h > 0.0)) throw Error(Errc::invalid_argument, "finite-difference step must be positive");
  if (p.singular_at_origin()) {
    const double centre = cut.arg(point);
    for (const auto& q : stencil_points(point, h)) {
      if (q.x == 0.0 && q.y == 0.0) {
        throw Error(Errc::origin_evaluation, "stencil touches the vortex origin");
      }
      // A jump of ~2pi in the branch angle between neighbours means the
      // stencil straddles the cut.
      if (std::fabs(cut.arg(q) - centre) > std::numbers::pi) {
        throw Error(Errc::stencil_crosses_cut, "stencil crosses the branch cut");
      }
    }
  }
  const auto phi = [&](Point2D q) { return eval_Phi_Psi(p, q, cut).phi; };
  const auto psi = [&](Point2D q) { return eval_Phi_Psi(p, q, cut).psi; };
  return {partial_x(phi, point, h) - partial_y(psi, point, h),
          partial_y(phi, point, h) + partial_x(psi, point, h)};
}

double consistency_state_vs_potential(const StateSpec& state, Point2D point,
                                      const NodeThreshold& th, const BranchCut& cut) {
  cut.validate();
  const auto v = velocity(state, point, th);
  if (v.singular()) {
    throw Error(Errc::singular_point, "state velocity is singular at the query point");
  }
  const Vec2 w = velocity_from_potential(potential_of_state(state), point);
  return max_abs(Vec2{v.value->x - w.x, v.value->y - w.y});
}

}  // namespace qflow
