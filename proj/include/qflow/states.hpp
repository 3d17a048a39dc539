#pragma once

// Catalog of closed-form stationary states: plane wave, 2D harmonic
// oscillator eigenstate, and central-field bound state reduced to a fixed
// polar angle theta (planar coordinates rho = r sin(theta), phi).

#include <complex>
#include <memory>
#include <numbers>
#include <span>
#include <variant>
#include <vector>

#include "qflow/numerics.hpp"
#include "qflow/special_functions.hpp"

namespace qflow {

using cplx = std::complex<double>;

struct PhysicalConstants {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const;
};

// a e^{i(px x + py y)/hbar} with |a|^2 = amplitude_sq and a real, positive.
struct PlaneWaveSpec {
  double px = 0.0;
  double py = 0.0;
  double amplitude_sq = 1.0;
};

struct OscillatorSpec {
  PolyDegree nx;
  PolyDegree ny;
  double omega = 1.0;

  // sqrt(m omega / hbar)
  double alpha(const PhysicalConstants& c) const;
};

// R(r) = N r^l exp(-r^2 / (2 width^2)), normalised so that
// integral R^2 r^2 dr = 1.
struct GaussianRadial {
  double width = 1.0;
};

// Real radial profile given as samples, interpolated with a natural cubic
// spline. Copies share the immutable interpolant.
class TabulatedRadial {
 public:
  // Needs >= 3 strictly increasing, finite radii and matching finite values.
  TabulatedRadial(std::vector<double> radii, std::vector<double> values);

  std::span<const double> radii() const noexcept;
  std::span<const double> values() const noexcept;
  bool in_range(double r) const noexcept;
  // Both throw Error(out_of_table_range) outside [radii.front(), radii.back()].
  double value(double r) const;
  double derivative(double r) const;

 private:
  struct Spline;
  std::shared_ptr<const Spline> spline_;
};

using RadialChoice = std::variant<GaussianRadial, TabulatedRadial>;

struct CentralFieldSpec {
  PolyDegree l;
  int ml = 0;
  RadialChoice radial = GaussianRadial{};
  // Direction of the planar slice; 0 < theta < pi.
  double theta = std::numbers::pi / 2;
};

struct StateSpec {
  std::variant<PlaneWaveSpec, OscillatorSpec, CentralFieldSpec> variant;
  PhysicalConstants constants;

  // Throws Error(invalid_argument) when a variant invariant is broken.
  void validate() const;

  const CentralFieldSpec* central() const noexcept {
    return std::get_if<CentralFieldSpec>(&variant);
  }
};

StateSpec make_plane_wave(double px, double py, double amplitude_sq = 1.0,
                          PhysicalConstants c = {});
StateSpec make_oscillator(int nx, int ny, double omega = 1.0, PhysicalConstants c = {});
StateSpec make_central(int l, int ml, RadialChoice radial = GaussianRadial{},
                       PhysicalConstants c = {});

struct ComplexGradient {
  cplx dx;
  cplx dy;
};

/// Value of the wavefunction at a point of the plane. For the central
/// variant this is M(rho) e^{i ml phi} with M real.
cplx amplitude(const StateSpec& state, Point2D p);

/// Closed-form (d/dx, d/dy) of amplitude(). For the central variant with
/// ml != 0 the exact origin throws Error(origin_evaluation).
ComplexGradient grad_amplitude(const StateSpec& state, Point2D p);

/// Angular quantum number that labels the circulation of the state's flow
/// (ml for central-field states, 0 otherwise).
int circulation_quantum(const StateSpec& state) noexcept;

}  // namespace qflow
