#include <cmath>
#include <stdexcept>

#include "hfscatter/xray/xray.hpp"

namespace hfscatter::xray {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::size_t Sinogram::plane_size() const {
  std::size_t s = 1;
  for (int a = 0; a < dim - 1; ++a) s *= static_cast<std::size_t>(offset_count);
  return s;
}

double Sinogram::direction_weight() const {
  const double sphere = (dim == 2) ? 2.0 * kPi : 4.0 * kPi;
  return sphere / static_cast<double>(directions.size());
}

std::array<double, 3> Sinogram::perp1(const std::array<double, 3>& theta) {
  if (std::abs(theta[2]) < 0.9) {
    // theta x z, normalized
    const double nx = theta[1], ny = -theta[0];
    const double n = std::sqrt(nx * nx + ny * ny);
    return {nx / n, ny / n, 0.0};
  }
  return {1.0, 0.0, 0.0};
}

std::array<double, 3> Sinogram::perp2(const std::array<double, 3>& theta) {
  const auto e1 = perp1(theta);
  return {theta[1] * e1[2] - theta[2] * e1[1], theta[2] * e1[0] - theta[0] * e1[2],
          theta[0] * e1[1] - theta[1] * e1[0]};
}

std::vector<std::array<double, 3>> make_directions(int dim, int count) {
  if (count < 2) throw std::invalid_argument("make_directions: need at least 2 directions");
  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<std::size_t>(count));
  if (dim == 2) {
    for (int i = 0; i < count; ++i) {
      const double ang = kPi * i / count;  // half circle
      out.push_back({std::cos(ang), std::sin(ang), 0.0});
    }
  } else if (dim == 3) {
    // Fibonacci spiral on the upper hemisphere
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int i = 0; i < count; ++i) {
      const double z = (i + 0.5) / count;
      const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
      const double ang = golden * i;
      out.push_back({r * std::cos(ang), r * std::sin(ang), z});
    }
  } else {
    throw std::invalid_argument("make_directions: the X-ray machinery needs dim 2 or 3");
  }
  return out;
}

Sinogram make_sinogram(int dim, int n_directions, int offset_count, double offset_half_width) {
  if (offset_count < 4) throw std::invalid_argument("make_sinogram: offset_count too small");
  Sinogram g;
  g.dim = dim;
  g.directions = make_directions(dim, n_directions);
  g.offset_count = offset_count;
  g.offset_spacing = 2.0 * offset_half_width / offset_count;
  g.values.assign(g.directions.size(), std::vector<double>(g.plane_size(), 0.0));
  return g;
}

Sinogram forward_xray(const PotentialModel& model, int dim, int n_directions, int offset_count,
                      double offset_half_width) {
  Sinogram g = make_sinogram(dim, n_directions, offset_count, offset_half_width);
  const bool analytic = model.has_analytic_fourier();
  for (std::size_t d = 0; d < g.directions.size(); ++d) {
    const auto& theta = g.directions[d];
    const auto e1 = Sinogram::perp1(theta);
    const auto e2 = Sinogram::perp2(theta);
    for (std::size_t q = 0; q < g.plane_size(); ++q) {
      const int i = static_cast<int>(q) % g.offset_count;
      const int j = static_cast<int>(q) / g.offset_count;
      const double s1 = g.offset(i);
      const double s2 = (dim == 3) ? g.offset(j) : 0.0;
      potentials::Point xp{s1 * e1[0] + s2 * e2[0], s1 * e1[1] + s2 * e2[1],
                           s1 * e1[2] + s2 * e2[2]};
      potentials::Point th{theta[0], theta[1], theta[2]};
      g.values[d][q] = analytic ? potentials::xray_analytic(model, xp, th, dim)
                                : potentials::xray_numeric(model, xp, th, dim);
    }
  }
  return g;
}

namespace {

// linear / bilinear interpolation on the offset grid, zero outside
double interp_profile(const Sinogram& g, std::size_t d, double s1, double s2) {
  auto sample1 = [&](double s, int& i0, double& w) -> bool {
    const double pos = s / g.offset_spacing + g.offset_count / 2;
    i0 = static_cast<int>(std::floor(pos));
    w = pos - i0;
    return i0 >= 0 && i0 + 1 < g.offset_count;
  };
  int i0 = 0, j0 = 0;
  double wi = 0.0, wj = 0.0;
  if (!sample1(s1, i0, wi)) return 0.0;
  if (g.dim == 2) {
    const auto& v = g.values[d];
    return (1.0 - wi) * v[static_cast<std::size_t>(i0)] + wi * v[static_cast<std::size_t>(i0 + 1)];
  }
  if (!sample1(s2, j0, wj)) return 0.0;
  const auto& v = g.values[d];
  auto at = [&](int i, int j) { return v[static_cast<std::size_t>(i + g.offset_count * j)]; };
  return (1.0 - wi) * (1.0 - wj) * at(i0, j0) + wi * (1.0 - wj) * at(i0 + 1, j0) +
         (1.0 - wi) * wj * at(i0, j0 + 1) + wi * wj * at(i0 + 1, j0 + 1);
}

}  // namespace

ComplexField xray_adjoint(const Sinogram& g, const Grid::Ptr& grid) {
  if (g.directions.size() < 2)
    throw std::invalid_argument("xray_adjoint: need at least 2 directions");
  if (grid->dim() != g.dim)
    throw std::invalid_argument("xray_adjoint: grid dimension does not match sinogram");

  ComplexField out(grid, spectral::Space::position);
  const double w = g.direction_weight();
  const int n = g.dim;

  std::vector<std::array<double, 3>> e1s, e2s;
  for (const auto& th : g.directions) {
    e1s.push_back(Sinogram::perp1(th));
    e2s.push_back(Sinogram::perp2(th));
  }

  for (std::size_t q = 0; q < out.size(); ++q) {
    const auto x = grid->position_point(q);
    double acc = 0.0;
    for (std::size_t d = 0; d < g.directions.size(); ++d) {
      double s1 = 0.0, s2 = 0.0;
      for (int a = 0; a < n; ++a) {
        s1 += x[a] * e1s[d][a];
        s2 += x[a] * e2s[d][a];
      }
      acc += interp_profile(g, d, s1, s2);
    }
    out[q] = acc * w;
  }
  return out;
}

}  // namespace hfscatter::xray
