#include "hfscatter/spectral/fourier.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "hfscatter/spectral/fft.hpp"

namespace hfscatter::spectral {

namespace {
constexpr double kPi = 3.14159265358979323846;

// Natural-order frequency index <-> DFT bin: per axis, bin = (m + M/2) mod M,
// which is m XOR M/2 for power-of-two M.  The continuum phase factor
// e^{+/- i L xi_k} collapses to (-1)^k = (-1)^m per axis (M/2 is even).
struct IndexWalker {
  int dim, M, half;
  std::array<int, 3> m{0, 0, 0};

  std::size_t bin() const {
    std::size_t b = 0;
    for (int a = dim - 1; a >= 0; --a) b = b * static_cast<std::size_t>(M) + (m[a] ^ half);
    return b;
  }
  int parity() const { return (m[0] + m[1] + m[2]) & 1; }
  void advance() {
    for (int a = 0; a < dim; ++a) {
      if (++m[a] < M) break;
      m[a] = 0;
    }
  }
};

}  // namespace

ComplexField fourier(const ComplexField& u) {
  if (u.space() != Space::position)
    throw std::invalid_argument("fourier: input must be in position space");
  const Grid& g = u.grid();
  const int n = g.dim();
  const int M = g.points_per_axis();

  std::vector<Complex> work = u.values();
  raw_dft(work.data(), n, M, -1);

  const double scale = std::pow(2.0 * kPi, -0.5 * n) * g.position_weight();
  ComplexField out(u.grid_ptr(), Space::frequency);
  IndexWalker w{n, M, M / 2};
  for (std::size_t i = 0; i < work.size(); ++i, w.advance())
    out[i] = (w.parity() ? -scale : scale) * work[w.bin()];
  return out;
}

ComplexField inverse_fourier(const ComplexField& uh) {
  if (uh.space() != Space::frequency)
    throw std::invalid_argument("inverse_fourier: input must be in frequency space");
  const Grid& g = uh.grid();
  const int n = g.dim();
  const int M = g.points_per_axis();

  std::vector<Complex> work(uh.size());
  IndexWalker w{n, M, M / 2};
  for (std::size_t i = 0; i < work.size(); ++i, w.advance())
    work[w.bin()] = (w.parity() ? -1.0 : 1.0) * uh[i];
  raw_dft(work.data(), n, M, +1);

  const double scale = std::pow(2.0 * kPi, -0.5 * n) * g.frequency_weight();
  ComplexField out(uh.grid_ptr(), Space::position);
  for (std::size_t i = 0; i < work.size(); ++i) out[i] = scale * work[i];
  return out;
}

void apply_free_multiplier(ComplexField& uhat, double t) {
  if (uhat.space() != Space::frequency)
    throw std::invalid_argument("apply_free_multiplier: field must be in frequency space");
  const Grid& g = uhat.grid();
  const int n = g.dim();
  const int M = g.points_per_axis();
  const auto& freqs = g.axis_frequencies();

  std::array<int, 3> m{0, 0, 0};
  for (std::size_t i = 0; i < uhat.size(); ++i) {
    double k2 = 0.0;
    for (int a = 0; a < n; ++a) k2 += freqs[m[a]] * freqs[m[a]];
    uhat[i] *= std::polar(1.0, -0.5 * t * k2);
    for (int a = 0; a < n; ++a) {
      if (++m[a] < M) break;
      m[a] = 0;
    }
  }
}

ComplexField free_propagate(const ComplexField& u, double t) {
  if (u.space() == Space::frequency) {
    ComplexField out = u;
    apply_free_multiplier(out, t);
    return out;
  }
  ComplexField uhat = fourier(u);
  apply_free_multiplier(uhat, t);
  return inverse_fourier(uhat);
}

}  // namespace hfscatter::spectral
