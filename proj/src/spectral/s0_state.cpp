#include "hfscatter/spectral/s0_state.hpp"

#include <cmath>
#include <stdexcept>

#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::spectral {

S0State::S0State(ComplexField field) : field_(std::move(field)) {
  if (field_.space() != Space::position)
    throw std::invalid_argument("S0State: field must be in position space");
  ComplexField uhat = fourier(field_);
  double maxabs = sup_norm(uhat);
  if (maxabs == 0.0) {
    band_radius_ = 0.0;
    return;
  }
  const double thresh = kBandRelTol * maxabs;
  double r2max = 0.0;
  for (std::size_t i = 0; i < uhat.size(); ++i) {
    if (std::abs(uhat[i]) >= thresh) r2max = std::max(r2max, uhat.grid().frequency_norm_sq(i));
  }
  band_radius_ = std::sqrt(r2max);
}

bool S0State::fits_with_shift(double extra_shift) const {
  return band_radius_ + extra_shift <= field_.grid().max_frequency();
}

}  // namespace hfscatter::spectral
