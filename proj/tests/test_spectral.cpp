#include <doctest.h>

#include <cmath>
#include <random>

#include "hfscatter/spectral/field_io.hpp"
#include "hfscatter/spectral/fourier.hpp"
#include "hfscatter/spectral/s0_state.hpp"
#include "oracles.hpp"

using namespace hfscatter::spectral;
using oracles::max_abs_diff;

namespace {
constexpr double kPi = 3.14159265358979323846;

ComplexField gaussian_1d(const Grid::Ptr& g) {
  ComplexField u(g, Space::position);
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double x = g->position_point(i)[0];
    u[i] = std::exp(-0.5 * x * x);
  }
  return u;
}
}  // namespace

TEST_CASE("make_grid: 1-D nodes and frequencies") {
  auto g = make_grid({1, 8, 4.0});
  CHECK(g->spacing() == doctest::Approx(1.0));
  for (int m = 0; m < 8; ++m) CHECK(g->axis_positions()[m] == doctest::Approx(-4.0 + m));
  // frequency nodes -pi .. 3pi/4 in steps of pi/4
  for (int m = 0; m < 8; ++m)
    CHECK(g->axis_frequencies()[m] == doctest::Approx(kPi * (m - 4) / 4.0));
  CHECK(g->position_weight() == doctest::Approx(1.0));
  CHECK(g->frequency_weight() == doctest::Approx(kPi / 4.0));
}

TEST_CASE("make_grid: 2-D tensor grid") {
  auto g = make_grid({2, 16, 8.0});
  CHECK(g->size() == 256);
  CHECK(g->position_weight() == doctest::Approx(1.0));
}

TEST_CASE("make_grid: rejects invalid specs") {
  CHECK_THROWS(make_grid({1, 12, 4.0}));   // not a power of two
  CHECK_THROWS(make_grid({1, 4, 4.0}));    // below minimum
  CHECK_THROWS(make_grid({1, 16, -1.0}));  // bad half width
  CHECK_THROWS(make_grid({4, 16, 4.0}));   // unsupported dimension
  CHECK_THROWS(make_grid({0, 16, 4.0}));
}

TEST_CASE("fourier: matches defining sum on a small grid") {
  auto g = make_grid({1, 32, 6.0});
  std::mt19937_64 rng(7);
  ComplexField u = oracles::random_band_limited(g, 3.0, rng);
  CHECK(max_abs_diff(fourier(u), oracles::direct_fourier(u)) < 1e-12);
}

TEST_CASE("fourier: 2-D matches defining sum") {
  auto g = make_grid({2, 8, 3.0});
  std::mt19937_64 rng(8);
  ComplexField u = oracles::random_band_limited(g, 2.0, rng);
  CHECK(max_abs_diff(fourier(u), oracles::direct_fourier(u)) < 1e-12);
}

TEST_CASE("fourier: Gaussian pair e^{-x^2/2} -> e^{-xi^2/2}") {
  auto g = make_grid({1, 256, 16.0});
  ComplexField uhat = fourier(gaussian_1d(g));
  double worst = 0.0;
  for (std::size_t i = 0; i < uhat.size(); ++i) {
    const double xi = g->frequency_point(i)[0];
    worst = std::max(worst, std::abs(uhat[i] - Complex{std::exp(-0.5 * xi * xi), 0.0}));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("fourier: zero maps to zero, wrong space rejected") {
  auto g = make_grid({1, 16, 4.0});
  ComplexField z(g, Space::position);
  ComplexField zhat = fourier(z);
  CHECK(sup_norm(zhat) == 0.0);
  CHECK_THROWS(fourier(zhat));          // already frequency space
  CHECK_THROWS(inverse_fourier(z));     // position space input
}

TEST_CASE("fourier: Parseval and round trip on random band-limited fields") {
  auto g = make_grid({2, 32, 8.0});
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    ComplexField u = oracles::random_band_limited(g, 6.0, rng);
    ComplexField uhat = fourier(u);
    CHECK(std::abs(l2_norm(uhat) - l2_norm(u)) <= 1e-12 * l2_norm(u));
    ComplexField back = inverse_fourier(uhat);
    back -= u;
    CHECK(l2_norm(back) <= 1e-12 * l2_norm(u));
  }
}

TEST_CASE("free_propagate: t = 0 is the identity") {
  auto g = make_grid({1, 64, 8.0});
  ComplexField u = gaussian_1d(g);
  CHECK(max_abs_diff(free_propagate(u, 0.0), u) < 1e-14);
}

TEST_CASE("free_propagate: closed-form Gaussian evolution") {
  auto g = make_grid({1, 256, 16.0});
  ComplexField u = gaussian_1d(g);
  const double t = 0.7;
  ComplexField ut = free_propagate(u, t);
  const Complex a{1.0, t};
  double worst = 0.0;
  for (std::size_t i = 0; i < ut.size(); ++i) {
    const double x = g->position_point(i)[0];
    const Complex expect = std::exp(-0.5 * x * x / a) / std::sqrt(a);
    worst = std::max(worst, std::abs(ut[i] - expect));
  }
  CHECK(worst < 1e-8);
}

TEST_CASE("free_propagate: unitary and group law") {
  auto g = make_grid({1, 128, 10.0});
  std::mt19937_64 rng(3);
  ComplexField u = oracles::random_band_limited(g, 5.0, rng);
  const double n0 = l2_norm(u);
  ComplexField a = free_propagate(free_propagate(u, 0.4), 1.3);
  ComplexField b = free_propagate(u, 1.7);
  CHECK(std::abs(l2_norm(a) - n0) <= 1e-12 * n0);
  a -= b;
  CHECK(l2_norm(a) <= 1e-12 * n0);
}

TEST_CASE("S0State: band radius of a Gaussian") {
  auto g = make_grid({1, 256, 20.0});
  S0State s(gaussian_1d(g));
  // e^{-xi^2/2} crosses 1e-12 near xi = 7.43
  CHECK(s.band_radius() > 6.5);
  CHECK(s.band_radius() < 8.5);
  CHECK(s.fits_with_shift(0.0));
  CHECK_FALSE(s.fits_with_shift(g->max_frequency()));
}

TEST_CASE("field io: round trip preserves bits and metadata") {
  auto g = make_grid({2, 16, 5.0});
  std::mt19937_64 rng(5);
  ComplexField u = oracles::random_band_limited(g, 3.0, rng);
  const std::string path = "io_roundtrip.hfsf";
  write_field(path, u);
  ComplexField back = read_field(path);
  REQUIRE(back.grid().same_as(u.grid()));
  CHECK(max_abs_diff(back, u) == 0.0);
}
