#pragma once

#include "hfscatter/spectral/field.hpp"

namespace hfscatter::spectral {

/// Position-space state whose numerically effective frequency support lies in
/// |xi| <= band_radius: outside that ball, |uhat| < rel_tol * max|uhat|.
/// Mirrors the class of admissible probe states (Schwartz functions with
/// compactly supported Fourier transform).
class S0State {
 public:
  static constexpr double kBandRelTol = 1e-12;

  /// Measures the effective band radius of `field` (must be position space).
  explicit S0State(ComplexField field);

  const ComplexField& field() const { return field_; }
  double band_radius() const { return band_radius_; }

  /// True if the band fits the grid with room for an extra modulation |v|.
  bool fits_with_shift(double extra_shift) const;

 private:
  ComplexField field_;
  double band_radius_ = 0.0;
};

}  // namespace hfscatter::spectral
