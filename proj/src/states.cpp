#include "qflow/states.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "qflow/error.hpp"

namespace qflow {

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_argument, what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

}  // namespace

void PhysicalConstants::validate() const {
  require(finite_positive(hbar), "hbar must be positive");
  require(finite_positive(mass), "mass must be positive");
}

double OscillatorSpec::alpha(const PhysicalConstants& c) const {
  return std::sqrt(c.mass * omega / c.hbar);
}

// ---------------------------------------------------------------------------
// Tabulated radial profile

struct TabulatedRadial::Spline {
  std::vector<double> r;
  std::vector<double> f;
  std::unique_ptr<gsl_interp, decltype(&gsl_interp_free)> interp{nullptr, &gsl_interp_free};
};

TabulatedRadial::TabulatedRadial(std::vector<double> radii, std::vector<double> values) {
  require(radii.size() == values.size(), "radial table: radii and values differ in length");
  require(radii.size() >= 3, "radial table needs at least 3 samples");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require(std::isfinite(radii[i]) && std::isfinite(values[i]),
            "radial table entries must be finite");
    require(radii[i] >= 0.0, "radial table radii must be non-negative");
    require(i == 0 || radii[i] > radii[i - 1], "radial table radii must be strictly increasing");
  }

  // GSL aborts on domain errors by default; every call below is range-checked.
  static std::once_flag gsl_handler;
  std::call_once(gsl_handler, [] { gsl_set_error_handler_off(); });

  auto s = std::make_shared<Spline>();
  s->r = std::move(radii);
  s->f = std::move(values);
  s->interp.reset(gsl_interp_alloc(gsl_interp_cspline, s->r.size()));
  if (!s->interp || gsl_interp_init(s->interp.get(), s->r.data(), s->f.data(), s->r.size()) != 0) {
    throw Error(Errc::invalid_argument, "radial table: spline construction failed");
  }
  spline_ = std::move(s);
}

std::span<const double> TabulatedRadial::radii() const noexcept { return spline_->r; }
std::span<const double> TabulatedRadial::values() const noexcept { return spline_->f; }

bool TabulatedRadial::in_range(double r) const noexcept {
  return r >= spline_->r.front() && r <= spline_->r.back();
}

double TabulatedRadial::value(double r) const {
  if (!in_range(r)) {
    throw Error(Errc::out_of_table_range, "radius " + std::to_string(r) + " outside radial table");
  }
  // A null accelerator keeps evaluation free of shared mutable state.
  return gsl_interp_eval(spline_->interp.get(), spline_->r.data(), spline_->f.data(), r, nullptr);
}

double TabulatedRadial::derivative(double r) const {
  if (!in_range(r)) {
    throw Error(Errc::out_of_table_range, "radius " + std::to_string(r) + " outside radial table");
  }
  return gsl_interp_eval_deriv(spline_->interp.get(), spline_->r.data(), spline_->f.data(), r,
                               nullptr);
}

// ---------------------------------------------------------------------------

void StateSpec::validate() const {
  constants.validate();
  std::visit(
      [](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlaneWaveSpec>) {
          require(std::isfinite(s.px) && std::isfinite(s.py), "plane wave momenta must be finite");
          require(finite_positive(s.amplitude_sq), "plane wave amplitude_sq must be positive");
        } else if constexpr (std::is_same_v<T, OscillatorSpec>) {
          require(finite_positive(s.omega), "oscillator omega must be positive");
        } else {
          require(std::abs(s.ml) <= s.l, "central state needs |ml| <= l");
          require(std::isfinite(s.theta) && s.theta > 0.0 && s.theta < std::numbers::pi,
                  "central state slice angle must lie in (0, pi)");
          if (const auto* g = std::get_if<GaussianRadial>(&s.radial)) {
            require(finite_positive(g->width), "gaussian radial width must be positive");
          }
        }
      },
      variant);
}

StateSpec make_plane_wave(double px, double py, double amplitude_sq, PhysicalConstants c) {
  StateSpec s{PlaneWaveSpec{px, py, amplitude_sq}, c};
  s.validate();
  return s;
}

StateSpec make_oscillator(int nx, int ny, double omega, PhysicalConstants c) {
  StateSpec s{OscillatorSpec{nx, ny, omega}, c};
  s.validate();
  return s;
}

StateSpec make_central(int l, int ml, RadialChoice radial, PhysicalConstants c) {
  StateSpec s{CentralFieldSpec{l, ml, std::move(radial)}, c};
  s.validate();
  return s;
}

int circulation_quantum(const StateSpec& state) noexcept {
  const auto* c = state.central();
  return c ? c->ml : 0;
}

namespace {

// e^{-a^2 x^2/2} H_n(a x) and its x-derivative, unnormalised.
struct HermiteFunction {
  double value;
  double derivative;
};

HermiteFunction hermite_function(int n, double alpha, double x) {
  const double ax = alpha * x;
  const double g = std::exp(-0.5 * ax * ax);
  const double hn = hermite(n, ax);
  const double dhn = n > 0 ? 2.0 * n * hermite(n - 1, ax) : 0.0;
  return {g * hn, g * alpha * (dhn - ax * hn)};
}

struct RadialValue {
  double value;
  double derivative;
};

RadialValue radial_profile(const CentralFieldSpec& c, double r) {
  if (const auto* t = std::get_if<TabulatedRadial>(&c.radial)) {
    return {t->value(r), t->derivative(r)};
  }
  const double w = std::get<GaussianRadial>(c.radial).width;
  const int l = c.l;
  const double norm = std::sqrt(2.0 / (std::tgamma(l + 1.5) * std::pow(w, 2 * l + 3)));
  const double g = norm * std::exp(-0.5 * r * r / (w * w));
  const double rl = std::pow(r, l);
  const double drl = l == 0 ? 0.0 : l * std::pow(r, l - 1);
  return {rl * g, (drl - rl * r / (w * w)) * g};
}

// C_{l m} P_l^{|m|}(cos theta): the fixed-slice angular factor.
double angular_factor(const CentralFieldSpec& c) {
  const int l = c.l;
  const int m = std::abs(c.ml);
  const double ratio = std::exp(std::lgamma(l - m + 1.0) - std::lgamma(l + m + 1.0));
  const double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * std::numbers::pi) * ratio);
  return norm * assoc_legendre(l, m, std::cos(c.theta));
}

// Planar magnitude M(rho) and dM/drho.
RadialValue central_magnitude(const CentralFieldSpec& c, double rho) {
  const double s = std::sin(c.theta);
  const double k = angular_factor(c);
  const auto r = radial_profile(c, rho / s);
  return {k * r.value, k * r.derivative / s};
}

}  // namespace

cplx amplitude(const StateSpec& state, Point2D p) {
  const auto& k = state.constants;
  return std::visit(
      [&](const auto& s) -> cplx {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlaneWaveSpec>) {
          return std::sqrt(s.amplitude_sq) * std::polar(1.0, (s.px * p.x + s.py * p.y) / k.hbar);
        } else if constexpr (std::is_same_v<T, OscillatorSpec>) {
          const double a = s.alpha(k);
          const double n = oscillator_norm(s.nx, a) * oscillator_norm(s.ny, a);
          return n * hermite_function(s.nx, a, p.x).value * hermite_function(s.ny, a, p.y).value;
        } else {
          const double rho = std::hypot(p.x, p.y);
          const double phi = std::atan2(p.y, p.x);
          return central_magnitude(s, rho).value * std::polar(1.0, s.ml * phi);
        }
      },
      state.variant);
}

ComplexGradient grad_amplitude(const StateSpec& state, Point2D p) {
  const auto& k = state.constants;
  return std::visit(
      [&](const auto& s) -> ComplexGradient {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, PlaneWaveSpec>) {
          const cplx psi = amplitude(state, p);
          const cplx i_over_hbar{0.0, 1.0 / k.hbar};
          return {i_over_hbar * s.px * psi, i_over_hbar * s.py * psi};
        } else if constexpr (std::is_same_v<T, OscillatorSpec>) {
          const double a = s.alpha(k);
          const double n = oscillator_norm(s.nx, a) * oscillator_norm(s.ny, a);
          const auto fx = hermite_function(s.nx, a, p.x);
          const auto fy = hermite_function(s.ny, a, p.y);
          return {n * fx.derivative * fy.value, n * fx.value * fy.derivative};
        } else {
          const double rho = std::hypot(p.x, p.y);
          if (rho == 0.0 && s.ml != 0) {
            throw Error(Errc::origin_evaluation,
                        "gradient of a central state with ml != 0 is undefined at the origin");
          }
          const auto mag = central_magnitude(s, rho);
          if (rho == 0.0) return {mag.derivative, 0.0};
          const double c = p.x / rho;
          const double sn = p.y / rho;
          const cplx phase = std::polar(1.0, s.ml * std::atan2(p.y, p.x));
          const cplx iml_over_rho{0.0, s.ml * mag.value / rho};
          // d/dx = cos(phi) d/drho - sin(phi)/rho d/dphi, and d/dphi -> i ml.
          return {phase * (mag.derivative * c - iml_over_rho * sn),
                  phase * (mag.derivative * sn + iml_over_rho * c)};
        }
      },
      state.variant);
}

}  // namespace qflow
