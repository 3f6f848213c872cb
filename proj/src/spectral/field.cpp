#include "hfscatter/spectral/field.hpp"

#include <cmath>
#include <stdexcept>

namespace hfscatter::spectral {

ComplexField::ComplexField(Grid::Ptr grid, Space space, std::vector<Complex> values)
    : grid_(std::move(grid)), space_(space), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw std::invalid_argument("ComplexField: value count does not match grid size");
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  if (!grid_->same_as(other.grid()) || space_ != other.space())
    throw std::invalid_argument("ComplexField: mismatched grids or spaces in +=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator-=(const ComplexField& other) {
  if (!grid_->same_as(other.grid()) || space_ != other.space())
    throw std::invalid_argument("ComplexField: mismatched grids or spaces in -=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex c) {
  for (auto& v : values_) v *= c;
  return *this;
}

double l2_norm(const ComplexField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s += std::norm(v);
  return std::sqrt(s * f.weight());
}

double sup_norm(const ComplexField& f) {
  double s = 0.0;
  for (const auto& v : f.values()) s = std::max(s, std::abs(v));
  return s;
}

Complex inner_product(const ComplexField& f, const ComplexField& g) {
  if (!f.grid().same_as(g.grid()) || f.space() != g.space())
    throw std::invalid_argument("inner_product: mismatched grids or spaces");
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < f.size(); ++i) s += f[i] * std::conj(g[i]);
  return s * f.weight();
}

bool all_finite(const ComplexField& f) {
  for (const auto& v : f.values())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  return true;
}

}  // namespace hfscatter::spectral
