#pragma once

#include "hfscatter/spectral/field.hpp"

namespace hfscatter::spectral {

/// Discrete analogue of (Fu)(xi) = (2 pi)^{-n/2} \int e^{-i x.xi} u(x) dx.
/// Input must be in position space; output is in frequency space with the
/// ascending xi layout.  Exact Parseval and exact round trip by construction.
ComplexField fourier(const ComplexField& u);

/// Inverse transform; input must be in frequency space.
ComplexField inverse_fourier(const ComplexField& u);

/// Free propagator U_0(t) = e^{-i t H_0}, H_0 = -Laplacian/2, realized as the
/// multiplier e^{-i t |xi|^2 / 2}.  Accepts either representation and returns
/// the same one.  Exactly unitary on the grid.
ComplexField free_propagate(const ComplexField& u, double t);

/// In-place multiplier application on a frequency-space field.
void apply_free_multiplier(ComplexField& uhat, double t);

}  // namespace hfscatter::spectral
