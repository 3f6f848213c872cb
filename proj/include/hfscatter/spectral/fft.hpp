#pragma once

#include <complex>

namespace hfscatter::spectral {

/// Unnormalized in-place complex DFT over an n-dimensional M^n array,
/// axis 0 fastest.  sign = -1 forward (e^{-2 pi i mk/M}), +1 backward.
/// Thread-safe: plans are cached behind a mutex, execution is concurrent.
void raw_dft(std::complex<double>* data, int dim, int points_per_axis, int sign);

}  // namespace hfscatter::spectral
