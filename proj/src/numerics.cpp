#include "qflow/numerics.hpp"

#include <algorithm>
#include <numbers>
#include <numeric>

namespace qflow {

namespace {

bool finite_all(std::initializer_list<double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

void Grid2D::validate() const {
  if (const auto* c = std::get_if<CartesianGrid>(&kind)) {
    if (!finite_all({c->x0, c->x1, c->y0, c->y1}) || !(c->x0 < c->x1) ||
        !(c->y0 < c->y1)) {
      throw Error(Errc::invalid_argument, "cartesian grid bounds must be ordered");
    }
    if (c->nx < 2 || c->ny < 2) {
      throw Error(Errc::invalid_argument, "cartesian grid needs at least 2 nodes per axis");
    }
  } else {
    const auto& a = std::get<PolarAnnulusGrid>(kind);
    if (!finite_all({a.r0, a.r1}) || !(a.r0 > 0.0) || !(a.r0 < a.r1)) {
      throw Error(Errc::invalid_argument, "annulus needs 0 < r0 < r1");
    }
    if (a.nr < 2 || a.nphi < 2) {
      throw Error(Errc::invalid_argument, "annulus needs at least 2 radii and 2 angles");
    }
  }
  for (const auto& d : exclusions) {
    if (!(d.radius >= 0.0) || !finite_all({d.center.x, d.center.y, d.radius})) {
      throw Error(Errc::invalid_argument, "exclusion disk must have a finite non-negative radius");
    }
  }
}

std::vector<GridNode> grid_nodes(const Grid2D& grid) {
  grid.validate();
  std::vector<GridNode> nodes;
  auto keep = [&](const GridNode& n) {
    return std::none_of(grid.exclusions.begin(), grid.exclusions.end(),
                        [&](const Disk& d) { return d.contains(n.point); });
  };

  if (const auto* c = std::get_if<CartesianGrid>(&grid.kind)) {
    const double dx = (c->x1 - c->x0) / (c->nx - 1);
    const double dy = (c->y1 - c->y0) / (c->ny - 1);
    nodes.reserve(static_cast<std::size_t>(c->nx) * c->ny);
    for (int j = 0; j < c->ny; ++j) {
      const double y = (j == c->ny - 1) ? c->y1 : c->y0 + j * dy;
      for (int i = 0; i < c->nx; ++i) {
        const double x = (i == c->nx - 1) ? c->x1 : c->x0 + i * dx;
        GridNode n{{x, y}, x, y};
        if (keep(n)) nodes.push_back(n);
      }
    }
  } else {
    const auto& a = std::get<PolarAnnulusGrid>(grid.kind);
    const double dr = (a.r1 - a.r0) / (a.nr - 1);
    const double dphi = 2.0 * std::numbers::pi / a.nphi;
    nodes.reserve(static_cast<std::size_t>(a.nr) * a.nphi);
    for (int i = 0; i < a.nr; ++i) {
      const double r = (i == a.nr - 1) ? a.r1 : a.r0 + i * dr;
      for (int j = 0; j < a.nphi; ++j) {
        const double phi = (j == a.nphi - 1) ? std::numbers::pi
                                             : -std::numbers::pi + (j + 1) * dphi;
        GridNode n{{r * std::cos(phi), r * std::sin(phi)}, r, phi};
        if (keep(n)) nodes.push_back(n);
      }
    }
  }
  return nodes;
}

double periodic_trapezoid(std::span<const double> samples, double period) {
  if (samples.empty()) return 0.0;
  const double sum = std::accumulate(samples.begin(), samples.end(), 0.0);
  return sum * period / static_cast<double>(samples.size());
}

ConvergenceReport convergence_order(std::span<const double> h_values,
                                    const std::function<double(double)>& residual_fn,
                                    double floor) {
  if (h_values.size() < 3) {
    throw Error(Errc::invalid_argument, "convergence_order needs at least 3 step sizes");
  }
  for (std::size_t i = 0; i < h_values.size(); ++i) {
    if (!(h_values[i] > 0.0) || (i > 0 && !(h_values[i] < h_values[i - 1]))) {
      throw Error(Errc::invalid_argument,
                  "convergence_order needs positive, strictly decreasing steps");
    }
  }
  if (h_values.front() / h_values.back() < 10.0 * (1.0 - 1e-12)) {
    throw Error(Errc::invalid_argument, "step sizes must span at least one decade");
  }

  ConvergenceReport report;
  report.h_values.assign(h_values.begin(), h_values.end());
  std::vector<double> lx, ly;
  for (double h : h_values) {
    const double r = std::fabs(residual_fn(h));
    report.residuals.push_back(r);
    const bool low = !(r > floor);
    report.at_floor.push_back(low);
    if (!low) {
      lx.push_back(std::log(h));
      ly.push_back(std::log(r));
    }
  }
  if (lx.size() < 2) {
    report.floor_flagged = true;
    return report;
  }
  const double n = static_cast<double>(lx.size());
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / n;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  report.fitted_order = sxy / sxx;
  return report;
}

}  // namespace qflow
