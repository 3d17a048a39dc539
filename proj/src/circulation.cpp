#include "qflow/circulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qflow/error.hpp"

namespace qflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(Errc::invalid_argument, what);
}

double expected_gamma(int winding, int quantum, const PhysicalConstants& k) {
  return kTwoPi * winding * quantum * k.hbar / k.mass;
}

}  // namespace

void Contour::validate() const {
  require(points.size() >= static_cast<std::size_t>(kMinContourPoints),
          "contour needs at least " + std::to_string(kMinContourPoints) + " points");
  require(tangents.empty() || tangents.size() == points.size(),
          "contour tangents must match the points");
  for (const auto& p : points) {
    require(std::isfinite(p.x) && std::isfinite(p.y), "contour points must be finite");
  }
  for (const auto& t : tangents) {
    require(std::isfinite(t.x) && std::isfinite(t.y), "contour tangents must be finite");
  }
  const double area = signed_area(points);
  if (area != 0.0) {
    require((area > 0.0) == (orientation == Orientation::ccw),
            "contour orientation disagrees with its signed area");
  }
}

Contour make_circle(Point2D center, double radius, int n_points) {
  require(std::isfinite(radius) && radius > 0.0, "circle radius must be positive");
  require(n_points >= kMinContourPoints,
          "circle needs at least " + std::to_string(kMinContourPoints) + " points");
  Contour c;
  c.points.reserve(n_points);
  c.tangents.reserve(n_points);
  for (int j = 0; j < n_points; ++j) {
    const double t = kTwoPi * j / n_points;
    const double cs = std::cos(t), sn = std::sin(t);
    c.points.push_back({center.x + radius * cs, center.y + radius * sn});
    c.tangents.push_back({-radius * sn, radius * cs});
  }
  c.orientation = Orientation::ccw;
  return c;
}

Contour reversed(const Contour& c) {
  const std::size_t n = c.points.size();
  Contour r;
  r.points.resize(n);
  if (!c.tangents.empty()) r.tangents.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = (n - j) % n;
    r.points[j] = c.points[src];
    if (!c.tangents.empty()) r.tangents[j] = {-c.tangents[src].x, -c.tangents[src].y};
  }
  r.orientation = c.orientation == Orientation::ccw ? Orientation::cw : Orientation::ccw;
  return r;
}

Contour repeated(const Contour& c, int times) {
  require(times >= 1, "repeat count must be positive");
  Contour r;
  r.orientation = c.orientation;
  const auto tangents = c.tangents.empty() ? spectral_tangents(c.points) : c.tangents;
  for (int k = 0; k < times; ++k) {
    r.points.insert(r.points.end(), c.points.begin(), c.points.end());
    for (const auto& t : tangents) r.tangents.push_back({times * t.x, times * t.y});
  }
  return r;
}

std::vector<Vec2> spectral_tangents(std::span<const Point2D> points) {
  const long n = static_cast<long>(points.size());
  std::vector<Vec2> out(points.size());
  if (n < 3) return out;
  const long kmax = (n - 1) / 2;  // drops the Nyquist mode for even n

  // twiddle[i] = exp(-2 pi i / n); exponents are reduced mod n.
  std::vector<cplx> twiddle(n);
  for (long j = 0; j < n; ++j) twiddle[j] = std::polar(1.0, -kTwoPi * j / n);
  const auto root = [&](long e) { return twiddle[((e % n) + n) % n]; };

  std::vector<cplx> coeff(2 * kmax + 1);
  for (long k = -kmax; k <= kmax; ++k) {
    cplx sum{};
    for (long j = 0; j < n; ++j) sum += cplx{points[j].x, points[j].y} * root(k * j);
    coeff[k + kmax] = cplx{0.0, static_cast<double>(k)} * sum / static_cast<double>(n);
  }
  for (long j = 0; j < n; ++j) {
    cplx d{};
    for (long k = -kmax; k <= kmax; ++k) d += coeff[k + kmax] * root(-k * j);
    out[j] = {d.real(), d.imag()};
  }
  return out;
}

double signed_area(std::span<const Point2D> points) {
  double twice = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& a = points[i];
    const auto& b = points[(i + 1) % points.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

int winding_number(const Contour& c, Point2D about) {
  double total = 0.0;
  const std::size_t n = c.points.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2D a{c.points[i].x - about.x, c.points[i].y - about.y};
    const Point2D b{c.points[(i + 1) % n].x - about.x, c.points[(i + 1) % n].y - about.y};
    total += std::atan2(a.x * b.y - a.y * b.x, a.x * b.x + a.y * b.y);
  }
  return static_cast<int>(std::lround(total / kTwoPi));
}

double line_integral(const VelocityField& v, const Contour& c) {
  c.validate();
  const auto tangents = c.tangents.empty() ? spectral_tangents(c.points) : c.tangents;
  std::vector<double> integrand(c.points.size());
  for (std::size_t j = 0; j < c.points.size(); ++j) {
    const auto s = v(c.points[j]);
    if (s.singular()) {
      throw Error(Errc::singular_contour, "velocity is singular at contour point " +
                                              std::to_string(j));
    }
    integrand[j] = s.value->x * tangents[j].x + s.value->y * tangents[j].y;
  }
  return periodic_trapezoid(integrand, kTwoPi);
}

CirculationResult circulation(const StateSpec& state, const Contour& c, const NodeThreshold& th) {
  th.validate();
  CirculationResult r;
  r.gamma = line_integral([&](Point2D p) { return velocity(state, p, th); }, c);
  r.winding = winding_number(c);
  r.quantum_residual =
      std::fabs(r.gamma - expected_gamma(r.winding, circulation_quantum(state), state.constants));
  return r;
}

CirculationResult circulation(const ComplexPotentialSpec& p, const Contour& c) {
  p.validate();
  const auto v = [&](Point2D q) -> VectorSample {
    try {
      return {velocity_from_potential(p, q)};
    } catch (const Error& e) {
      if (e.code() == Errc::origin_evaluation) return VectorSample::singular_sample();
      throw;
    }
  };
  CirculationResult r;
  r.gamma = line_integral(v, c);
  r.winding = winding_number(c);
  const auto* vortex = std::get_if<VortexFlow>(&p.variant);
  r.quantum_residual =
      std::fabs(r.gamma - expected_gamma(r.winding, vortex ? vortex->ml : 0, p.constants));
  return r;
}

StokesReport stokes_check(const StateSpec& state, std::span<const double> radii,
                          const NodeThreshold& th, int n_points) {
  require(radii.size() >= 2, "stokes check needs at least two radii");
  StokesReport report;
  for (double r : radii) {
    require(std::isfinite(r) && r > 0.0, "stokes check radii must be positive");
    report.radii.push_back(r);
    report.gammas.push_back(circulation(state, make_circle({}, r, n_points), th).gamma);
  }
  const auto [lo, hi] = std::minmax_element(report.gammas.begin(), report.gammas.end());
  report.spread = *hi - *lo;
  return report;
}

}  // namespace qflow
