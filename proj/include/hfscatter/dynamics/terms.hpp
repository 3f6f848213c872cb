#pragma once

#include <optional>

#include "hfscatter/dynamics/orbital_set.hpp"
#include "hfscatter/potentials/potential_model.hpp"

namespace hfscatter::dynamics {

using potentials::PotentialModel;

/// Shared FFT-convolution machinery for the nonlocal terms.  Caches the
/// sampled interaction transform; safe to share read-only across threads.
class TermWorkspace {
 public:
  TermWorkspace(Grid::Ptr grid, const PotentialModel& v_int, bool dealias = false);

  const Grid::Ptr& grid() const { return grid_; }
  bool has_interaction() const { return has_interaction_; }

  /// (V_int * w)(x) as periodic quadrature convolution, via
  /// F(V*w) = (2 pi)^{n/2} Vhat . what.
  ComplexField convolve(const ComplexField& w) const;

  /// Q_H(., u excluding orbital j) as a real multiplier field.
  ComplexField hartree_multiplier(const OrbitalSet& u, int j) const;

  /// Q_H u_j.
  ComplexField hartree(const OrbitalSet& u, int j) const;

  /// \int Q_F(x, y, u) u_j(y) dy = -sum_{k != j} (V_int * (u_j conj u_k)) u_k.
  ComplexField fock(const OrbitalSet& u, int j) const;

  /// Interaction-only nonlinearity N_j = Q_H u_j + Fock_j.
  ComplexField n_term(const OrbitalSet& u, int j) const;

  /// Full right-hand side P_j = (Q_H + V_ext) u_j + Fock_j, with V_ext given
  /// as a sampled (real) position-space field; pass nullptr when absent.
  ComplexField rhs(const OrbitalSet& u, int j, const ComplexField* v_ext_samples) const;

 private:
  Grid::Ptr grid_;
  bool has_interaction_ = false;
  bool dealias_ = false;
  ComplexField vhat_int_;  // frequency space
};

/// Spec-level one-shot wrappers (tests, small scenarios).
ComplexField hartree_term(const OrbitalSet& u, const PotentialModel& v_int, int j);
ComplexField fock_term(const OrbitalSet& u, const PotentialModel& v_int, int j);
ComplexField rhs_P(const OrbitalSet& u, const PotentialModel& v_int, const PotentialModel& v_ext,
                   int j);

}  // namespace hfscatter::dynamics
