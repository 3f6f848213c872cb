#pragma once

#include <array>
#include <vector>

#include "hfscatter/spectral/field.hpp"

namespace hfscatter::dynamics {

using spectral::Complex;
using spectral::ComplexField;
using spectral::Grid;

/// Gaussian bump descriptor for base orbital states:
///   phi(x) = A exp(-|x-c|^2 / (2 sigma^2)) exp(i (p.x + phase)).
struct GaussianState {
  double amplitude = 1.0;
  std::array<double, 3> center{0.0, 0.0, 0.0};
  double width = 1.0;
  std::array<double, 3> momentum{0.0, 0.0, 0.0};
  double phase = 0.0;

  ComplexField materialize(const Grid::Ptr& grid) const;

  /// phi((lambda+1) x) expressed as another Gaussian bump (exact).
  GaussianState dilate(double lambda) const;

  /// e^{i v.x} phi(x): adds v to the momentum.
  GaussianState boost(const std::array<double, 3>& v) const;

  /// Effective frequency support radius |p| + sigma^{-1} sqrt(2 ln 1e12).
  double band_radius() const;
};

/// The N-tuple u(t) = (u_1, ..., u_N) of orbitals on one grid at one time.
struct OrbitalSet {
  std::vector<ComplexField> orbitals;  // position space
  double time = 0.0;
  std::vector<double> initial_norms;  // recorded at construction

  OrbitalSet() = default;
  OrbitalSet(std::vector<ComplexField> orbs, double t);

  int count() const { return static_cast<int>(orbitals.size()); }
  const Grid& grid() const { return orbitals.front().grid(); }
  Grid::Ptr grid_ptr() const { return orbitals.front().grid_ptr(); }

  std::vector<double> norms() const;
  /// Max |current norm - initial norm| over orbitals.
  double norm_drift() const;
};

}  // namespace hfscatter::dynamics
