#include "hfscatter/dynamics/terms.hpp"

#include <cmath>
#include <stdexcept>

#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::dynamics {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_orbital_index(const OrbitalSet& u, int j) {
  if (j < 0 || j >= u.count()) throw std::out_of_range("orbital index out of range");
}

// 2/3-rule mask applied in frequency space.
void dealias_mask(ComplexField& what) {
  const auto& g = what.grid();
  const double cut = (2.0 / 3.0) * g.max_frequency();
  const int n = g.dim();
  for (std::size_t i = 0; i < what.size(); ++i) {
    const auto xi = g.frequency_point(i);
    for (int a = 0; a < n; ++a) {
      if (std::abs(xi[a]) > cut) {
        what[i] = 0.0;
        break;
      }
    }
  }
}

}  // namespace

TermWorkspace::TermWorkspace(Grid::Ptr grid, const PotentialModel& v_int, bool dealias)
    : grid_(std::move(grid)), dealias_(dealias) {
  v_int.validate();
  has_interaction_ = !v_int.is_zero();
  // Discrete transform of the sampled potential: the FFT path then equals
  // the periodized quadrature convolution exactly, not just to grid accuracy.
  if (has_interaction_) vhat_int_ = spectral::fourier(v_int.sample(grid_));
}

ComplexField TermWorkspace::convolve(const ComplexField& w) const {
  ComplexField what = spectral::fourier(w);
  if (dealias_) dealias_mask(what);
  const double pref = std::pow(2.0 * kPi, 0.5 * grid_->dim());
  for (std::size_t i = 0; i < what.size(); ++i) what[i] *= pref * vhat_int_[i];
  return spectral::inverse_fourier(what);
}

// The summed-density convolution shares every floating-point operation with
// the Fock pair convolutions, so for identical orbitals the two terms cancel
// bit for bit.
ComplexField TermWorkspace::hartree(const OrbitalSet& u, int j) const {
  check_orbital_index(u, j);
  ComplexField out(grid_, spectral::Space::position);
  if (!has_interaction_ || u.count() == 1) return out;

  ComplexField density(grid_, spectral::Space::position);
  for (int k = 0; k < u.count(); ++k) {
    if (k == j) continue;
    const auto& vals = u.orbitals[k].values();
    for (std::size_t i = 0; i < density.size(); ++i) density[i] += std::norm(vals[i]);
  }
  ComplexField conv = convolve(density);
  const auto& uj = u.orbitals[j].values();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = conv[i] * uj[i];
  return out;
}

ComplexField TermWorkspace::hartree_multiplier(const OrbitalSet& u, int j) const {
  check_orbital_index(u, j);
  ComplexField out(grid_, spectral::Space::position);
  if (!has_interaction_ || u.count() == 1) return out;

  ComplexField density(grid_, spectral::Space::position);
  for (int k = 0; k < u.count(); ++k) {
    if (k == j) continue;
    const auto& vals = u.orbitals[k].values();
    for (std::size_t i = 0; i < density.size(); ++i) density[i] += std::norm(vals[i]);
  }
  ComplexField conv = convolve(density);
  // V real even, density real: imaginary residue is rounding noise; a real
  // multiplier keeps the phase-rotation substep exactly unitary.
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = conv[i].real();
  return out;
}

ComplexField TermWorkspace::fock(const OrbitalSet& u, int j) const {
  check_orbital_index(u, j);
  ComplexField out(grid_, spectral::Space::position);
  if (!has_interaction_ || u.count() == 1) return out;

  const auto& uj = u.orbitals[j].values();
  ComplexField pair(grid_, spectral::Space::position);
  for (int k = 0; k < u.count(); ++k) {
    if (k == j) continue;
    const auto& uk = u.orbitals[k].values();
    for (std::size_t i = 0; i < pair.size(); ++i) pair[i] = uj[i] * std::conj(uk[i]);
    ComplexField conv = convolve(pair);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] -= conv[i] * uk[i];
  }
  return out;
}

ComplexField TermWorkspace::n_term(const OrbitalSet& u, int j) const {
  ComplexField out = hartree(u, j);
  out += fock(u, j);
  return out;
}

ComplexField TermWorkspace::rhs(const OrbitalSet& u, int j,
                                const ComplexField* v_ext_samples) const {
  ComplexField out = n_term(u, j);
  if (v_ext_samples) {
    const auto& uj = u.orbitals[j].values();
    const auto& v = v_ext_samples->values();
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += v[i].real() * uj[i];
  }
  return out;
}

ComplexField hartree_term(const OrbitalSet& u, const PotentialModel& v_int, int j) {
  TermWorkspace ws(u.grid_ptr(), v_int);
  return ws.hartree(u, j);
}

ComplexField fock_term(const OrbitalSet& u, const PotentialModel& v_int, int j) {
  TermWorkspace ws(u.grid_ptr(), v_int);
  return ws.fock(u, j);
}

ComplexField rhs_P(const OrbitalSet& u, const PotentialModel& v_int, const PotentialModel& v_ext,
                   int j) {
  TermWorkspace ws(u.grid_ptr(), v_int);
  if (v_ext.is_zero()) return ws.rhs(u, j, nullptr);
  ComplexField v = v_ext.sample(u.grid_ptr());
  return ws.rhs(u, j, &v);
}

}  // namespace hfscatter::dynamics
