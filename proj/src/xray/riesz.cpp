#include <cmath>
#include <complex>
#include <stdexcept>

#include "hfscatter/spectral/fft.hpp"
#include "hfscatter/spectral/fourier.hpp"
#include "hfscatter/xray/xray.hpp"

namespace hfscatter::xray {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

RieszResult riesz(const ComplexField& f, double a) {
  const Grid& g = f.grid();
  const int n = g.dim();
  // admissibility a < n: only the smoothing branch is constrained (the
  // multiplier |xi|^{-a} must stay locally integrable at the origin)
  if (!(a < n)) throw std::invalid_argument("riesz: requires a < dimension");

  const bool from_position = f.space() == spectral::Space::position;
  ComplexField fhat = from_position ? spectral::fourier(f) : f;

  RieszResult out{ComplexField(f.grid_ptr(), spectral::Space::frequency), 0.0};
  for (std::size_t q = 0; q < fhat.size(); ++q) {
    const double k2 = g.frequency_norm_sq(q);
    if (k2 == 0.0) {
      // a = 0: identity.  a > 0: zero mode dropped, mean reported.
      // a < 0: |xi|^{-a} vanishes at 0.
      out.field[q] = (a == 0.0) ? fhat[q] : spectral::Complex{0.0, 0.0};
      if (a > 0.0) {
        const double vol = std::pow(2.0 * g.half_width(), n);
        out.removed_mean = (std::pow(2.0 * kPi, 0.5 * n) * fhat[q]).real() / vol;
      }
      continue;
    }
    out.field[q] = fhat[q] * std::pow(k2, -0.5 * a);
  }
  if (from_position) out.field = spectral::inverse_fourier(out.field);
  return out;
}

std::vector<double> riesz_profile(const std::vector<double>& values, int count_per_axis,
                                  double spacing, double a, int dim_line) {
  if (dim_line != 1 && dim_line != 2)
    throw std::invalid_argument("riesz_profile: hyperplane dimension must be 1 or 2");
  std::size_t expected = static_cast<std::size_t>(count_per_axis);
  if (dim_line == 2) expected *= static_cast<std::size_t>(count_per_axis);
  if (values.size() != expected)
    throw std::invalid_argument("riesz_profile: value count mismatch");

  const int M = count_per_axis;
  std::vector<std::complex<double>> work(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) work[i] = values[i];
  spectral::raw_dft(work.data(), dim_line, M, -1);

  const double dk = 2.0 * kPi / (M * spacing);
  auto bin_freq = [&](int b) {
    const int k = (b <= M / 2) ? b : b - M;
    return dk * k;
  };
  for (std::size_t i = 0; i < work.size(); ++i) {
    const int b1 = static_cast<int>(i) % M;
    const int b2 = dim_line == 2 ? static_cast<int>(i) / M : 0;
    const double w1 = bin_freq(b1);
    const double w2 = dim_line == 2 ? bin_freq(b2) : 0.0;
    const double k2 = w1 * w1 + w2 * w2;
    work[i] *= (k2 == 0.0) ? (a < 0.0 ? 0.0 : (a == 0.0 ? 1.0 : 0.0)) : std::pow(k2, -0.5 * a);
  }
  spectral::raw_dft(work.data(), dim_line, M, +1);

  std::vector<double> out(values.size());
  const double norm = 1.0 / static_cast<double>(values.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = work[i].real() * norm;
  return out;
}

InversionOutput invert_xray(const Sinogram& g, const Grid::Ptr& grid, double a) {
  const int n = g.dim;
  if (n < 2) throw std::invalid_argument("invert_xray: needs dimension >= 2");
  if (!(a < n)) throw std::invalid_argument("invert_xray: requires a < n");

  InversionOutput out{ComplexField(grid, spectral::Space::position), 0.0, {}};

  // angular sampling guidance (parallel-beam rule of thumb)
  const int recommended = static_cast<int>(std::ceil(kPi * g.offset_count / 4.0));
  if (static_cast<int>(g.directions.size()) < recommended)
    out.warnings.push_back("direction count " + std::to_string(g.directions.size()) +
                           " below the recommended " + std::to_string(recommended) +
                           " for this offset resolution");

  // hyperplane filter |omega|^{1-a} per direction
  Sinogram filtered = g;
  for (std::size_t d = 0; d < g.values.size(); ++d)
    filtered.values[d] = riesz_profile(g.values[d], g.offset_count, g.offset_spacing, a - 1.0,
                                       n - 1);

  ComplexField back = xray_adjoint(filtered, grid);
  RieszResult outer = riesz(back, -a);

  const double sphere_nm2 = (n == 2) ? 2.0 : 2.0 * kPi;  // |S^{n-2}|
  const double scale = 1.0 / (2.0 * kPi * sphere_nm2);
  out.field = outer.field;
  out.field *= spectral::Complex{scale, 0.0};

  // Restore the zero mode from the sinogram's zeroth moment: for every
  // direction, int g ds = int f dx.
  double mass = 0.0;
  const double cell = std::pow(g.offset_spacing, n - 1);
  for (const auto& v : g.values) {
    double m = 0.0;
    for (double x : v) m += x;
    mass += m * cell;
  }
  mass /= static_cast<double>(g.values.size());
  const double target_mean = mass / std::pow(2.0 * grid->half_width(), n);
  double current = 0.0;
  for (const auto& v : out.field.values()) current += v.real();
  current /= static_cast<double>(out.field.size());
  for (auto& v : out.field.values()) v += (target_mean - current);
  out.restored_mean = target_mean;
  return out;
}

}  // namespace hfscatter::xray
