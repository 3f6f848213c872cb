#include <doctest.h>

#include <cmath>
#include <random>

#include "hfscatter/inversion/first_kind.hpp"
#include "hfscatter/inversion/slim.hpp"
#include "oracles.hpp"

using namespace hfscatter::inversion;
using namespace hfscatter::potentials;
using hfscatter::dynamics::GaussianState;
using hfscatter::probe::KernelConfig;
using hfscatter::spectral::Complex;
using hfscatter::spectral::ComplexField;
using hfscatter::spectral::make_grid;

namespace {

PotentialModel gauss_pot(double A, double sigma, PotentialRole role = PotentialRole::interaction) {
  PotentialModel m;
  m.kind = PotentialKind::gaussian;
  m.amplitude = A;
  m.width_or_power = sigma;
  m.role = role;
  return m;
}

std::vector<GaussianState> two_states() {
  return {GaussianState{0.5, {-1.0, 0.0, 0.0}, 1.0, {0.0, 0.0, 0.0}, 0.0},
          GaussianState{0.4, {1.0, 0.0, 0.0}, 1.2, {0.0, 0.0, 0.0}, 0.0}};
}

}  // namespace

TEST_CASE("singular_system: diagonal, zero, and multiply-back") {
  Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 1.0;
  SingularSystem sys = singular_system(d);
  CHECK(sys.mu[0] == doctest::Approx(3.0));
  CHECK(sys.mu[1] == doctest::Approx(1.0));
  CHECK(std::abs(sys.phi.col(0)[0]) == doctest::Approx(1.0));
  CHECK(std::abs(sys.g.col(0)[0]) == doctest::Approx(1.0));
  CHECK(sys.verification_residual < 1e-10);

  Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 4);
  SingularSystem zs = singular_system(z);
  CHECK(zs.mu.maxCoeff() == 0.0);
  TruncationSpec rule;
  CHECK_THROWS_WITH_AS(picard_reconstruct(zs, Eigen::VectorXcd::Zero(3), rule),
                       doctest::Contains("rank-0"), std::runtime_error);

  std::mt19937_64 rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd r(20, 40);
  for (Eigen::Index i = 0; i < r.size(); ++i)
    r.data()[i] = Complex{gauss(rng), gauss(rng)};
  SingularSystem rs = singular_system(r);
  Eigen::MatrixXcd rebuilt =
      rs.g * rs.mu.asDiagonal().toDenseMatrix().cast<Complex>() * rs.phi.adjoint();
  CHECK((rebuilt - r).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(rs.verification_residual < 1e-10);
}

TEST_CASE("picard_reconstruct: zero data, in-range recovery, linearity") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd T(12, 30);
  for (Eigen::Index i = 0; i < T.size(); ++i) T.data()[i] = Complex{gauss(rng), gauss(rng)};
  SingularSystem sys = singular_system(T);

  TruncationSpec fixed;
  fixed.rule = TruncationRule::fixed_rank;
  fixed.fixed_rank = 12;

  auto zero = picard_reconstruct(sys, Eigen::VectorXcd::Zero(12), fixed);
  CHECK(zero.vhat_band.norm() == 0.0);

  // truth inside the span of the retained right vectors -> exact recovery
  Eigen::VectorXcd truth = Eigen::VectorXcd::Zero(30);
  for (int k = 0; k < 12; ++k) truth += Complex{gauss(rng), gauss(rng)} * sys.phi.col(k);
  Eigen::VectorXcd slim = T * truth;
  auto rec = picard_reconstruct(sys, slim, fixed);
  CHECK((rec.vhat_band - truth).norm() < 1e-8 * truth.norm());

  // linearity at fixed truncation
  Eigen::VectorXcd s1 = Eigen::VectorXcd::Random(12), s2 = Eigen::VectorXcd::Random(12);
  const Complex a{0.7, -0.2}, b{-1.1, 0.4};
  auto r1 = picard_reconstruct(sys, s1, fixed);
  auto r2 = picard_reconstruct(sys, s2, fixed);
  auto r12 = picard_reconstruct(sys, a * s1 + b * s2, fixed);
  CHECK((r12.vhat_band - a * r1.vhat_band - b * r2.vhat_band).norm() < 1e-10);

  // Picard partial sums are non-decreasing
  for (std::size_t k = 1; k < rec.diagnostics.partial_sums.size(); ++k)
    CHECK(rec.diagnostics.partial_sums[k] >= rec.diagnostics.partial_sums[k - 1]);
}

TEST_CASE("picard_reconstruct: discrepancy rule under noise") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  // decaying spectrum makes the inversion genuinely ill-posed
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Random(16, 16).householderQr().householderQ();
  Eigen::MatrixXcd V = Eigen::MatrixXcd::Random(24, 24).householderQr().householderQ();
  Eigen::VectorXd mu(16);
  for (int k = 0; k < 16; ++k) mu[k] = std::pow(10.0, -0.5 * k);
  Eigen::MatrixXcd T = U * mu.asDiagonal().toDenseMatrix().cast<Complex>() *
                       V.leftCols(16).adjoint();
  SingularSystem sys = singular_system(T);

  Eigen::VectorXcd truth = Eigen::VectorXcd::Zero(24);
  for (int k = 0; k < 6; ++k) truth += Complex{gauss(rng), 0.0} * sys.phi.col(k);
  Eigen::VectorXcd clean = T * truth;

  const double noise_level = 0.01 * clean.norm();
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXcd noisy = clean;
    for (Eigen::Index i = 0; i < noisy.size(); ++i)
      noisy[i] += noise_level / std::sqrt(32.0) * Complex{gauss(rng), gauss(rng)};
    TruncationSpec rule;
    rule.rule = TruncationRule::discrepancy;
    rule.delta = 1.2 * noise_level;  // Morozov level with a standard margin
    auto rec = picard_reconstruct(sys, noisy, rule);
    // compare on the retained band
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(24);
    for (int k = 0; k < rec.diagnostics.truncation_index; ++k)
      proj += sys.phi.col(k).dot(truth) * sys.phi.col(k);
    worst = std::max(worst, (rec.vhat_band - proj).norm() / truth.norm());
  }
  CHECK(worst < 0.35);
}

TEST_CASE("richardson_limit: exact on its own model") {
  std::vector<double> speeds{8.0, 16.0, 32.0};
  const Complex a0{0.3, -0.1}, a1{1.0, 0.5}, a2{-2.0, 0.2};
  std::vector<Complex> vals;
  for (double v : speeds) vals.push_back(a0 + a1 / v + a2 / (v * v));
  auto ex = richardson_limit(speeds, vals);
  CHECK(std::abs(ex.limit - a0) < 1e-12);

  std::vector<double> four{4.0, 8.0, 16.0, 32.0};
  std::vector<Complex> vals4;
  for (double v : four) vals4.push_back(a0 + a1 / v + a2 / (v * v));
  auto ex4 = richardson_limit(four, vals4);
  CHECK(std::abs(ex4.limit - a0) < 1e-12);
  CHECK(ex4.residual < 1e-12);
}

TEST_CASE("assemble_T: zero kernel and quadrature row identity") {
  auto g = make_grid({1, 32, 10.0});
  KernelConfig kc{2.0, 0.1, 1e30};

  // N = 1: zero kernel -> explicitly rank-0 operator
  std::vector<GaussianState> one{GaussianState{0.4, {0.0, 0.0, 0.0}, 1.0, {0.0, 0.0, 0.0}, 0.0}};
  FirstKindOperator t0 = assemble_T(one, g, 0, 0.0, {0.0, 0.5}, kc);
  CHECK(t0.matrix.cwiseAbs().maxCoeff() == 0.0);

  auto base = two_states();
  std::vector<double> lambdas{0.0, 0.4, 0.8};
  FirstKindOperator T = assemble_T(base, g, 0, 0.0, lambdas, kc);
  CHECK(T.matrix.rows() == 3);
  CHECK(static_cast<std::size_t>(T.matrix.cols()) == T.xi_nodes.size());

  // row applied to the constant vector equals the plain kernel quadrature
  Eigen::VectorXcd ones = Eigen::VectorXcd::Ones(T.matrix.cols());
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    ComplexField H = hfscatter::probe::kernel_H(base, g, 0, lambdas[m], kc);
    Complex direct{0.0, 0.0};
    for (auto q : T.xi_nodes) direct += H[q] * T.xi_weight;
    const Complex row = T.matrix.row(static_cast<Eigen::Index>(m)) * ones;
    CHECK(std::abs(row - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("vint_from_vhat: Fourier-pair recovery and band-truncation gauge") {
  auto g = make_grid({1, 128, 16.0});
  auto base = two_states();
  KernelConfig kc{2.0, 0.1, 1e30};
  FirstKindOperator T = assemble_T(base, g, 0, 0.0, {0.0, 0.3, 0.6}, kc, 1e-10);

  auto v = gauss_pot(0.8, 1.4);
  ComplexField vhat_full = v.analytic_fourier(g);
  Eigen::VectorXcd band = T.restrict(vhat_full);
  PositionEstimate est = vint_from_vhat(T, band);

  ComplexField truth = v.sample(g);
  double num = 0.0, den = 0.0, tail = 0.0;
  for (std::size_t q = 0; q < truth.size(); ++q) {
    num += std::norm(est.field[q] - truth[q]);
    den += std::norm(truth[q]);
  }
  // Parseval: the position-space error equals the out-of-band mass
  ComplexField missing = vhat_full;
  for (auto q : T.xi_nodes) missing[q] = 0.0;
  tail = hfscatter::spectral::l2_norm(missing);
  const double err = std::sqrt(num * g->position_weight());
  CHECK(err <= tail + 1e-10);
  CHECK(est.imaginary_fraction < 1e-6);

  // zero in, zero out
  PositionEstimate z = vint_from_vhat(T, Eigen::VectorXcd::Zero(band.size()));
  CHECK(hfscatter::spectral::sup_norm(z.field) == 0.0);
}

TEST_CASE("collect_slim: matches the kernel quadrature within the Born budget") {
  auto g = make_grid({2, 64, 10.0});
  hfscatter::probe::ProbeConfig cfg;
  cfg.base_states = {GaussianState{0.22, {-0.8, 0.0, 0.0}, 1.3, {0.0, 0.0, 0.0}, 0.0},
                     GaussianState{0.22, {0.8, 0.0, 0.0}, 1.3, {0.0, 0.0, 0.0}, 0.0}};
  cfg.direction = {1.0, 0.0, 0.0};
  cfg.speeds = {8.0, 16.0, 32.0};

  auto v = gauss_pot(0.4, 1.0);
  PotentialModel zero;

  hfscatter::scattering::ScatterConfig sc;
  sc.dt = 1.0 / 64.0;
  sc.half_window = 4.0;

  std::vector<double> lambdas{0.0, 0.5};
  SlimSweep sweep = collect_slim(cfg, g, 0, lambdas, v, zero, sc, false);
  REQUIRE(sweep.points.size() == 2);

  KernelConfig kc{sc.half_window, 0.02, 1e30};
  ComplexField vhat = v.analytic_fourier(g);
  for (std::size_t m = 0; m < lambdas.size(); ++m) {
    ComplexField H = hfscatter::probe::kernel_H(cfg.base_states, g, 0, lambdas[m], kc);
    const Complex want = hfscatter::probe::integrate_against(vhat, H);
    CHECK(std::abs(sweep.points[m].value - want) < 0.05 * std::abs(want));
  }
}

TEST_CASE("uniqueness: distinct interaction phantoms separate in slim data") {
  auto g = make_grid({2, 64, 10.0});
  auto base = two_states();
  KernelConfig kc{4.0, 0.02, 1e30};
  std::vector<double> lambdas{0.0, 0.3, 0.6, 0.9};
  FirstKindOperator T = assemble_T(base, g, 0, 0.0, lambdas, kc);

  auto va = gauss_pot(0.4, 1.0);
  auto vb = gauss_pot(0.4, 1.5);
  Eigen::VectorXcd slim_a = T.matrix * T.restrict(va.analytic_fourier(g));
  Eigen::VectorXcd slim_b = T.matrix * T.restrict(vb.analytic_fourier(g));
  const double extrapolation_tol = 1e-4;
  CHECK((slim_a - slim_b).norm() > 10.0 * extrapolation_tol);
}
