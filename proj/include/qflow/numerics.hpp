#pragma once

#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "qflow/error.hpp"

namespace qflow {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline double norm(Vec2 v) noexcept { return std::hypot(v.x, v.y); }
inline double max_abs(Vec2 v) noexcept {
  return std::fmax(std::fabs(v.x), std::fabs(v.y));
}

// A field value at one point. An empty value means the field is singular
// there (node of the wavefunction or vortex core).
template <class T>
struct FieldSample {
  std::optional<T> value;

  static FieldSample singular_sample() { return {}; }
  bool singular() const noexcept { return !value.has_value(); }
};

struct CartesianGrid {
  double x0 = -1.0, x1 = 1.0, y0 = -1.0, y1 = 1.0;
  int nx = 2, ny = 2;
};

// Radii r0..r1 inclusive; angles -pi + 2pi (j+1)/nphi, i.e. in (-pi, pi].
struct PolarAnnulusGrid {
  double r0 = 0.5, r1 = 1.0;
  int nr = 2, nphi = 8;
};

struct Disk {
  Point2D center;
  double radius = 0.0;

  bool contains(Point2D p) const noexcept {
    return std::hypot(p.x - center.x, p.y - center.y) < radius;
  }
};

struct Grid2D {
  std::variant<CartesianGrid, PolarAnnulusGrid> kind;
  std::vector<Disk> exclusions;

  bool is_polar() const noexcept {
    return std::holds_alternative<PolarAnnulusGrid>(kind);
  }
  // Throws Error(invalid_argument) when bounds or counts are bad.
  void validate() const;
};

// One lattice node: Cartesian position plus its native coordinates
// ((x, y) or (r, phi)).
struct GridNode {
  Point2D point;
  double u = 0.0;
  double v = 0.0;
};

/// Non-excluded nodes in row-major (Cartesian: y outer, x inner) or
/// (r, phi)-major order. Deterministic for a given grid.
std::vector<GridNode> grid_nodes(const Grid2D& grid);

template <class T>
struct SampleRow {
  GridNode node;
  FieldSample<T> sample;
  std::optional<Error> error;  // per-point failure, recorded not thrown
};

template <class T, class F>
std::vector<SampleRow<T>> sample_grid(const Grid2D& grid, F&& evaluate) {
  std::vector<SampleRow<T>> rows;
  const auto nodes = grid_nodes(grid);
  rows.reserve(nodes.size());
  for (const auto& node : nodes) {
    SampleRow<T> row{node, {}, std::nullopt};
    try {
      row.sample = evaluate(node.point);
    } catch (const Error& e) {
      row.error = e;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Second-order central differences.
template <class F>
auto partial_x(F&& f, Point2D p, double h) {
  return (f(Point2D{p.x + h, p.y}) - f(Point2D{p.x - h, p.y})) / (2.0 * h);
}

template <class F>
auto partial_y(F&& f, Point2D p, double h) {
  return (f(Point2D{p.x, p.y + h}) - f(Point2D{p.x, p.y - h})) / (2.0 * h);
}

// The four points used by partial_x / partial_y, in the order +x, -x, +y, -y.
inline std::array<Point2D, 4> stencil_points(Point2D p, double h) {
  return {Point2D{p.x + h, p.y}, Point2D{p.x - h, p.y}, Point2D{p.x, p.y + h},
          Point2D{p.x, p.y - h}};
}

/// Sum of samples of a periodic integrand on a uniform grid over one
/// period (the trapezoidal rule, which is spectrally accurate for smooth
/// periodic functions).
double periodic_trapezoid(std::span<const double> samples, double period);

struct ConvergenceReport {
  std::vector<double> h_values;
  std::vector<double> residuals;
  std::vector<bool> at_floor;  // residual excluded from the fit
  double fitted_order = std::nan("");
  // Fewer than two residuals above the floor: no slope could be fitted.
  bool floor_flagged = false;
};

/// Least-squares slope of log(residual) against log(h). Needs at least three
/// strictly decreasing h values spanning a decade. Residuals <= floor are
/// excluded from the fit.
ConvergenceReport convergence_order(std::span<const double> h_values,
                                    const std::function<double(double)>& residual_fn,
                                    double floor = 1e-10);

// Every pass/fail threshold in one place, with the defaults the verification
// suites use.
struct Tolerances {
  double fd_step = 1e-4;
  double gradient_fd_step = 1e-5;
  double node_relative = 1e-12;  // epsilon_rho = node_relative * peak density
  double core_radius_steps = 10.0;  // vortex core radius in units of fd_step
  double vorticity = 1e-6;
  double divergence = 1e-6;
  double continuity = 1e-6;
  double cauchy_riemann = 1e-6;
  double consistency = 1e-8;
  double quantization_relative = 1e-6;
  double circulation_absolute = 1e-8;  // |Gamma| for non-encircling contours
  double stokes_spread = 1e-8;
  double min_order = 1.9;
  double roundoff_floor = 1e-10;
  int circle_points = 256;
  std::vector<double> convergence_steps{1e-2, 3e-3, 1e-3, 3e-4, 1e-4};
  std::vector<double> stokes_radii{0.5, 1.0, 2.0};
};

}  // namespace qflow
