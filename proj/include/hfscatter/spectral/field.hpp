#pragma once

#include <complex>
#include <vector>

#include "hfscatter/spectral/grid.hpp"

namespace hfscatter::spectral {

using Complex = std::complex<double>;

enum class Space { position, frequency };

/// Complex-valued function sampled on a Grid, in position or frequency
/// representation.  Frequency storage uses the natural ascending xi layout.
class ComplexField {
 public:
  ComplexField() = default;
  ComplexField(Grid::Ptr grid, Space space)
      : grid_(std::move(grid)), space_(space), values_(grid_->size(), Complex{0.0, 0.0}) {}
  ComplexField(Grid::Ptr grid, Space space, std::vector<Complex> values);

  const Grid& grid() const { return *grid_; }
  Grid::Ptr grid_ptr() const { return grid_; }
  Space space() const { return space_; }
  std::size_t size() const { return values_.size(); }

  std::vector<Complex>& values() { return values_; }
  const std::vector<Complex>& values() const { return values_; }
  Complex& operator[](std::size_t i) { return values_[i]; }
  const Complex& operator[](std::size_t i) const { return values_[i]; }

  /// Quadrature weight of the current representation.
  double weight() const {
    return space_ == Space::position ? grid_->position_weight() : grid_->frequency_weight();
  }

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator-=(const ComplexField& other);
  ComplexField& operator*=(Complex c);

 private:
  Grid::Ptr grid_;
  Space space_ = Space::position;
  std::vector<Complex> values_;
};

/// Weighted L2 norm approximating the continuum norm.
double l2_norm(const ComplexField& f);
double sup_norm(const ComplexField& f);

/// Weighted inner product <f, g> = sum w f conj(g); both fields must share
/// grid and space.
Complex inner_product(const ComplexField& f, const ComplexField& g);

bool all_finite(const ComplexField& f);

}  // namespace hfscatter::spectral
