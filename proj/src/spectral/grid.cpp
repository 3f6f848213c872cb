#include "hfscatter/spectral/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hfscatter::spectral {

namespace {
constexpr double kPi = 3.14159265358979323846;

bool is_power_of_two(int m) { return m > 0 && (m & (m - 1)) == 0; }
}  // namespace

void GridSpec::validate() const {
  if (dim < 1 || dim > 3)
    throw std::invalid_argument("GridSpec: dim must be 1, 2 or 3, got " + std::to_string(dim));
  if (points_per_axis < 8 || !is_power_of_two(points_per_axis))
    throw std::invalid_argument("GridSpec: points_per_axis must be a power of two >= 8, got " +
                                std::to_string(points_per_axis));
  if (!(half_width > 0.0) || !std::isfinite(half_width))
    throw std::invalid_argument("GridSpec: half_width must be positive and finite");
}

Grid::Grid(const GridSpec& spec) : spec_(spec) {
  const int M = spec.points_per_axis;
  const double L = spec.half_width;
  h_ = 2.0 * L / M;
  dxi_ = kPi / L;
  xi_max_ = kPi / h_;

  size_ = 1;
  for (int a = 0; a < spec.dim; ++a) size_ *= static_cast<std::size_t>(M);

  pos_weight_ = std::pow(h_, spec.dim);
  freq_weight_ = std::pow(dxi_, spec.dim);

  axis_pos_.resize(M);
  axis_freq_.resize(M);
  for (int m = 0; m < M; ++m) {
    axis_pos_[m] = -L + m * h_;
    axis_freq_[m] = dxi_ * (m - M / 2);
  }
}

Grid::Ptr Grid::make(const GridSpec& spec) {
  spec.validate();
  return Ptr(new Grid(spec));
}

Grid::Ptr make_grid(const GridSpec& spec) { return Grid::make(spec); }

}  // namespace hfscatter::spectral
