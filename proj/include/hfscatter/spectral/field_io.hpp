#pragma once

#include <string>

#include "hfscatter/spectral/field.hpp"

namespace hfscatter::spectral {

/// Binary field format: header {magic "HFSF", version u32, n u32, M u32,
/// L f64}, little-endian, then M^n complex doubles (re, im interleaved),
/// row-major with axis x1 fastest.
void write_field(const std::string& path, const ComplexField& f);

/// Reads a field written by write_field.  The representation is not part of
/// the format; `space` tells the caller's intent (defaults to position).
ComplexField read_field(const std::string& path, Space space = Space::position);

}  // namespace hfscatter::spectral
