#include "hfscatter/dynamics/orbital_set.hpp"

#include <cmath>
#include <stdexcept>

namespace hfscatter::dynamics {

ComplexField GaussianState::materialize(const Grid::Ptr& grid) const {
  ComplexField out(grid, spectral::Space::position);
  const int n = grid->dim();
  const double inv2s2 = 0.5 / (width * width);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = grid->position_point(i);
    double r2 = 0.0, px = 0.0;
    for (int a = 0; a < n; ++a) {
      const double d = x[a] - center[a];
      r2 += d * d;
      px += momentum[a] * x[a];
    }
    out[i] = amplitude * std::exp(-r2 * inv2s2) * std::polar(1.0, px + phase);
  }
  return out;
}

GaussianState GaussianState::dilate(double lambda) const {
  if (lambda <= -1.0) throw std::invalid_argument("GaussianState::dilate: lambda must be > -1");
  const double s = 1.0 + lambda;
  GaussianState out = *this;
  out.width = width / s;
  for (int a = 0; a < 3; ++a) {
    out.center[a] = center[a] / s;
    out.momentum[a] = momentum[a] * s;
  }
  return out;
}

GaussianState GaussianState::boost(const std::array<double, 3>& v) const {
  GaussianState out = *this;
  for (int a = 0; a < 3; ++a) out.momentum[a] += v[a];
  return out;
}

double GaussianState::band_radius() const {
  const double p = std::sqrt(momentum[0] * momentum[0] + momentum[1] * momentum[1] +
                             momentum[2] * momentum[2]);
  return p + std::sqrt(2.0 * std::log(1e12)) / width;
}

OrbitalSet::OrbitalSet(std::vector<ComplexField> orbs, double t)
    : orbitals(std::move(orbs)), time(t) {
  if (orbitals.empty()) throw std::invalid_argument("OrbitalSet: needs at least one orbital");
  const Grid& g = orbitals.front().grid();
  for (const auto& o : orbitals) {
    if (!o.grid().same_as(g) || o.space() != spectral::Space::position)
      throw std::invalid_argument("OrbitalSet: orbitals must share one grid, position space");
  }
  initial_norms.reserve(orbitals.size());
  for (const auto& o : orbitals) initial_norms.push_back(spectral::l2_norm(o));
}

std::vector<double> OrbitalSet::norms() const {
  std::vector<double> out;
  out.reserve(orbitals.size());
  for (const auto& o : orbitals) out.push_back(spectral::l2_norm(o));
  return out;
}

double OrbitalSet::norm_drift() const {
  double worst = 0.0;
  for (std::size_t j = 0; j < orbitals.size(); ++j)
    worst = std::max(worst, std::abs(spectral::l2_norm(orbitals[j]) - initial_norms[j]));
  return worst;
}

}  // namespace hfscatter::dynamics
