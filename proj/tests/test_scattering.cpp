#include <doctest.h>

#include <cmath>

#include "hfscatter/scattering/scatter.hpp"
#include "hfscatter/spectral/fourier.hpp"
#include "oracles.hpp"

using namespace hfscatter::scattering;
using namespace hfscatter::potentials;
using hfscatter::dynamics::GaussianState;
using hfscatter::dynamics::OrbitalSet;
using hfscatter::spectral::Complex;
using hfscatter::spectral::l2_norm;
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

std::vector<ComplexField> two_packets(const hfscatter::spectral::Grid::Ptr& g) {
  GaussianState a{0.2, {-1.0, 0.0, 0.0}, 1.2, {0.0, 0.0, 0.0}, 0.0};
  GaussianState b{0.2, {1.0, 0.0, 0.0}, 1.2, {0.0, 0.0, 0.0}, 0.0};
  return {a.materialize(g), b.materialize(g)};
}

double diff_norm(const ComplexField& a, const ComplexField& b) {
  ComplexField d = a;
  d -= b;
  return l2_norm(d);
}

}  // namespace

TEST_CASE("ScatterConfig validation") {
  ScatterConfig bad;
  bad.half_window = 1.0;
  bad.dt = 0.3;  // does not divide T
  CHECK_THROWS(bad.validate());
  bad.dt = 0.25;
  CHECK_NOTHROW(bad.validate());
  bad.half_window = -1.0;
  CHECK_THROWS(bad.validate());
}

TEST_CASE("free theory: S is the identity and the flow is exactly free") {
  auto g = make_grid({1, 128, 12.0});
  auto phi = two_packets(g);
  PotentialModel zero;
  ScatterConfig cfg;
  cfg.half_window = 2.0;
  cfg.dt = 0.05;

  ScatterOutput out = apply_S(phi, zero, zero, cfg);
  for (int j = 0; j < 2; ++j) {
    CHECK(diff_norm(out.psi[j], phi[j]) < 1e-10);
    CHECK(std::abs(out.pairing[j]) < 1e-10);
  }
  CHECK(out.consistency_residual < 1e-10);
  CHECK_FALSE(out.flagged);
}

TEST_CASE("identical orbitals: exchange cancellation makes S trivial") {
  auto g = make_grid({1, 128, 12.0});
  GaussianState s{0.25, {0.0, 0.0, 0.0}, 1.0, {0.0, 0.0, 0.0}, 0.0};
  std::vector<ComplexField> phi{s.materialize(g), s.materialize(g)};
  auto v = gauss_pot(0.8, 1.0);
  PotentialModel zero;
  ScatterConfig cfg;
  cfg.half_window = 2.0;
  cfg.dt = 0.005;

  ScatterOutput out = apply_S(phi, v, zero, cfg);
  for (int j = 0; j < 2; ++j) CHECK(diff_norm(out.psi[j], phi[j]) < 1e-8);

  // The split treats the cancelling Hartree and Fock parts by different
  // substeps, so the trajectory matches free flight at the stepper's own
  // O(dt^2) accuracy rather than exactly.
  Trajectory traj = solve_scattering_solution(phi, v, zero, cfg);
  for (int j = 0; j < 2; ++j) {
    ComplexField freeT =
        hfscatter::spectral::free_propagate(phi[j], cfg.half_window);
    CHECK(diff_norm(traj.final_state.orbitals[j], freeT) < 1e-8);
  }
}

TEST_CASE("apply_S: psi - phi is first order in the external amplitude") {
  auto g = make_grid({1, 128, 14.0});
  auto phi = two_packets(g);
  PotentialModel zero;
  ScatterConfig cfg;
  cfg.half_window = 3.0;
  cfg.dt = 0.025;

  std::vector<double> logA, logD;
  for (double A : {0.01, 0.02, 0.04}) {
    auto vext = gauss_pot(A, 1.3, PotentialRole::external);
    ScatterOutput out = apply_S(phi, zero, vext, cfg);
    logA.push_back(std::log(A));
    logD.push_back(std::log(diff_norm(out.psi[0], phi[0])));
  }
  const double slope = oracles::fit_slope(logA, logD);
  CHECK(slope > 0.95);
  CHECK(slope < 1.05);
}

TEST_CASE("apply_S: window robustness once the packet traverses the potential") {
  // A genuine traversal scenario: the packet crosses the external potential
  // around t = 0 and has cleared it well before |t| = T, so doubling the
  // window changes psi below the tail budget.
  auto g = make_grid({1, 256, 32.0});
  GaussianState s{0.3, {0.0, 0.0, 0.0}, 2.0, {4.0, 0.0, 0.0}, 0.0};
  std::vector<ComplexField> phi{s.materialize(g)};
  PotentialModel zero;
  auto vext = gauss_pot(0.4, 1.0, PotentialRole::external);

  ScatterConfig cfg;
  cfg.half_window = 3.0;
  cfg.dt = 0.0125;
  cfg.tail_tol = 1e-4;
  ScatterConfig wide = cfg;
  wide.half_window = 6.0;

  ScatterOutput a = apply_S(phi, zero, vext, cfg);
  ScatterOutput b = apply_S(phi, zero, vext, wide);
  CHECK(diff_norm(a.psi[0], b.psi[0]) < cfg.tail_tol);
  CHECK(std::abs(a.pairing[0] - b.pairing[0]) < cfg.tail_tol);
}

TEST_CASE("apply_S: norm budget warning and consistency residual reporting") {
  auto g = make_grid({1, 64, 10.0});
  GaussianState s{1.2, {0.0, 0.0, 0.0}, 1.0, {0.0, 0.0, 0.0}, 0.0};
  std::vector<ComplexField> phi{s.materialize(g)};
  PotentialModel zero;
  ScatterConfig cfg;
  cfg.half_window = 1.0;
  cfg.dt = 0.05;
  ScatterOutput out = apply_S(phi, zero, zero, cfg);
  CHECK(out.warnings.size() == 1);  // ||phi|| above the 0.5 budget
  CHECK(out.consistency_residual < 1e-10);
}

TEST_CASE("born_N: zero potential, identical orbitals, and t = 0 agreement") {
  auto g = make_grid({1, 64, 10.0});
  auto phi = two_packets(g);
  PotentialModel zero;
  auto z = born_N(phi, zero, 0.3);
  CHECK(hfscatter::spectral::sup_norm(z[0]) == 0.0);

  GaussianState s{0.3, {0.0, 0.0, 0.0}, 1.0, {0.0, 0.0, 0.0}, 0.0};
  std::vector<ComplexField> same{s.materialize(g), s.materialize(g)};
  auto v = gauss_pot(0.7, 1.1);
  auto ident = born_N(same, v, 1.1);
  CHECK(hfscatter::spectral::sup_norm(ident[0]) < 1e-12);

  auto n0 = born_N(phi, v, 0.0);
  OrbitalSet u(phi, 0.0);
  for (int j = 0; j < 2; ++j) {
    ComplexField want = hfscatter::dynamics::rhs_P(u, v, zero, j);
    CHECK(oracles::max_abs_diff(n0[j], want) < 1e-12);
  }
}

TEST_CASE("moving frame: boosted external potential reduces to a translated sample") {
  // With V_int = 0 and N = 1 the moving-frame run must match a lab-frame run
  // of the same translated time-dependent potential; here we just check that
  // the frame velocity changes the outcome in the expected direction: a very
  // fast sweep leaves the packet nearly untouched.
  auto g = make_grid({1, 128, 14.0});
  GaussianState s{0.3, {0.0, 0.0, 0.0}, 1.2, {0.0, 0.0, 0.0}, 0.0};
  std::vector<ComplexField> phi{s.materialize(g)};
  PotentialModel zero;
  auto vext = gauss_pot(0.5, 1.0, PotentialRole::external);

  ScatterConfig slow;
  slow.half_window = 2.0;
  slow.dt = 0.01;
  ScatterOutput at_rest = apply_S(phi, zero, vext, slow);

  ScatterConfig fast = slow;
  ScatterOutput swept = apply_S(phi, zero, vext, fast, {24.0, 0.0, 0.0});

  CHECK(diff_norm(at_rest.psi[0], phi[0]) > 10.0 * diff_norm(swept.psi[0], phi[0]));
}
