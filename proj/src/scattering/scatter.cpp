#include "hfscatter/scattering/scatter.hpp"

#include <cmath>
#include <stdexcept>

#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::scattering {

using dynamics::Propagator;
using dynamics::StepperConfig;
using dynamics::TermWorkspace;
using spectral::Space;

void ScatterConfig::validate() const {
  if (!(half_window > 0.0)) throw std::invalid_argument("ScatterConfig: T must be positive");
  if (!(dt > 0.0)) throw std::invalid_argument("ScatterConfig: dt must be positive");
  const double ratio = half_window / dt;
  if (std::abs(ratio - std::round(ratio)) > 1e-9 * ratio)
    throw std::invalid_argument("ScatterConfig: dt must divide T");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("ScatterConfig: tail_tol must be positive");
}

int ScatterConfig::step_count() const {
  return static_cast<int>(std::round(2.0 * half_window / dt));
}

namespace {

OrbitalSet initial_state(const std::vector<ComplexField>& phi, double T,
                         std::vector<std::string>& warnings, double norm_budget) {
  if (phi.empty()) throw std::invalid_argument("scattering: empty orbital tuple");
  std::vector<ComplexField> orbs;
  orbs.reserve(phi.size());
  for (std::size_t j = 0; j < phi.size(); ++j) {
    const double nrm = spectral::l2_norm(phi[j]);
    if (nrm > norm_budget)
      warnings.push_back("orbital " + std::to_string(j) + " norm " + std::to_string(nrm) +
                         " exceeds smallness budget " + std::to_string(norm_budget));
    orbs.push_back(spectral::free_propagate(phi[j], -T));
  }
  return OrbitalSet(std::move(orbs), -T);
}

}  // namespace

Trajectory solve_scattering_solution(const std::vector<ComplexField>& phi,
                                     const PotentialModel& v_int, const PotentialModel& v_ext,
                                     const ScatterConfig& cfg, int snapshot_stride,
                                     std::array<double, 3> frame_velocity,
                                     const NodeObserver& observer) {
  cfg.validate();
  Trajectory out;
  OrbitalSet u = initial_state(phi, cfg.half_window, out.warnings, cfg.norm_budget);

  StepperConfig scfg;
  scfg.dt = cfg.dt;
  Propagator prop(u.grid_ptr(), v_int, v_ext, scfg, frame_velocity);

  const int K = cfg.step_count();
  for (int i = 0;; ++i) {
    const double t = -cfg.half_window + i * cfg.dt;
    out.times.push_back(t);
    out.norms.push_back(u.norms());
    std::vector<double> sups;
    for (const auto& o : u.orbitals) sups.push_back(spectral::sup_norm(o));
    out.sup_norms.push_back(std::move(sups));
    if (snapshot_stride > 0 && i % snapshot_stride == 0) out.snapshots.push_back(u);
    if (observer) observer(t, u);
    if (i == K) break;
    prop.step(u);
  }
  out.final_state = std::move(u);
  return out;
}

ScatterOutput apply_S(const std::vector<ComplexField>& phi, const PotentialModel& v_int,
                      const PotentialModel& v_ext, const ScatterConfig& cfg,
                      std::array<double, 3> frame_velocity) {
  cfg.validate();
  ScatterOutput out;

  const Grid::Ptr grid = phi.front().grid_ptr();
  const int N = static_cast<int>(phi.size());
  const int K = cfg.step_count();

  TermWorkspace work(grid, v_int);
  PotentialModel vext_model = v_ext;
  vext_model.validate();
  const bool has_ext = !vext_model.is_zero();
  const bool moving = frame_velocity[0] != 0.0 || frame_velocity[1] != 0.0 ||
                      frame_velocity[2] != 0.0;
  ComplexField vext_static;
  if (has_ext && !moving) vext_static = vext_model.sample(grid);

  // Frequency-space accumulators of e^{+i t H_0} P_j(t); trapezoid weights.
  std::vector<ComplexField> acc(N, ComplexField(grid, Space::frequency));
  std::vector<ComplexField> acc_coarse;  // every other node, for Richardson
  if (cfg.richardson) acc_coarse.assign(N, ComplexField(grid, Space::frequency));

  double rhs_norm_start = 0.0, rhs_norm_end = 0.0;

  auto observer = [&](double t, const OrbitalSet& u) {
    const int i = static_cast<int>(std::round((t + cfg.half_window) / cfg.dt));
    const double w = (i == 0 || i == K) ? 0.5 * cfg.dt : cfg.dt;
    const ComplexField* vext = nullptr;
    ComplexField vext_moving;
    if (has_ext) {
      if (moving) {
        vext_moving = vext_model.sample(
            grid, {frame_velocity[0] * t, frame_velocity[1] * t, frame_velocity[2] * t});
        vext = &vext_moving;
      } else {
        vext = &vext_static;
      }
    }
    double rhs_total = 0.0;
    for (int j = 0; j < N; ++j) {
      ComplexField p = work.rhs(u, j, vext);
      rhs_total += spectral::l2_norm(p);
      ComplexField phat = spectral::fourier(p);
      spectral::apply_free_multiplier(phat, -t);  // e^{+ i t H_0}
      for (std::size_t q = 0; q < phat.size(); ++q) {
        acc[j][q] += w * phat[q];
        if (cfg.richardson && i % 2 == 0) {
          const double wc = (i == 0 || i == K) ? cfg.dt : 2.0 * cfg.dt;
          acc_coarse[j][q] += wc * phat[q];
        }
      }
    }
    if (i == 0) rhs_norm_start = rhs_total;
    if (i == K) rhs_norm_end = rhs_total;
  };

  Trajectory traj = solve_scattering_solution(phi, v_int, vext_model, cfg, 0, frame_velocity,
                                              observer);
  out.warnings = traj.warnings;

  // psi_j = phi_j + (1/i) * accumulated integral.
  const Complex inv_i{0.0, -1.0};
  out.psi.reserve(N);
  for (int j = 0; j < N; ++j) {
    if (cfg.richardson) {
      // trapezoid(h) + (trapezoid(h) - trapezoid(2h)) / 3
      for (std::size_t q = 0; q < acc[j].size(); ++q)
        acc[j][q] += (acc[j][q] - acc_coarse[j][q]) / 3.0;
    }
    ComplexField corr = spectral::inverse_fourier(acc[j]);
    ComplexField psi = phi[j];
    for (std::size_t q = 0; q < psi.size(); ++q) psi[q] += inv_i * corr[q];
    out.psi.push_back(std::move(psi));
  }

  // Theorem-2.1-style outgoing consistency: u(T) vs U_0(T) psi.
  for (int j = 0; j < N; ++j) {
    ComplexField free_out = spectral::free_propagate(out.psi[j], cfg.half_window);
    free_out -= traj.final_state.orbitals[j];
    out.consistency_residual = std::max(out.consistency_residual, spectral::l2_norm(free_out));
  }

  // Neglected |t| > T contribution, modelled with the t^{-3/2} decay of the
  // integrand norm.
  out.tail_estimate = 2.0 * cfg.half_window * (rhs_norm_start + rhs_norm_end);
  out.flagged = out.consistency_residual > 10.0 * cfg.tail_tol;

  out.pairing.resize(N);
  for (int j = 0; j < N; ++j) {
    ComplexField diff = out.psi[j];
    diff -= phi[j];
    out.pairing[j] = Complex{0.0, 1.0} * spectral::inner_product(diff, phi[j]);
  }
  return out;
}

std::vector<ComplexField> born_N(const std::vector<ComplexField>& phi,
                                 const PotentialModel& v_int, double t) {
  const Grid::Ptr grid = phi.front().grid_ptr();
  std::vector<ComplexField> flow;
  flow.reserve(phi.size());
  for (const auto& p : phi) flow.push_back(spectral::free_propagate(p, t));
  OrbitalSet u(std::move(flow), t);
  TermWorkspace work(grid, v_int);
  std::vector<ComplexField> out;
  out.reserve(phi.size());
  for (int j = 0; j < u.count(); ++j) out.push_back(work.n_term(u, j));
  return out;
}

}  // namespace hfscatter::scattering
