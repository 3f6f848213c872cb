#include "hfscatter/dynamics/stepper.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::dynamics {

using spectral::Space;

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt))
    throw std::invalid_argument("StepperConfig: dt must be positive");
}

Propagator::Propagator(Grid::Ptr grid, const PotentialModel& v_int, const PotentialModel& v_ext,
                       StepperConfig cfg, std::array<double, 3> frame_velocity)
    : grid_(grid),
      v_ext_(v_ext),
      cfg_(cfg),
      frame_velocity_(frame_velocity),
      work_(grid, v_int, cfg.dealias) {
  cfg_.validate();
  v_ext_.validate();
  has_external_ = !v_ext_.is_zero();
  moving_frame_ = frame_velocity_[0] != 0.0 || frame_velocity_[1] != 0.0 ||
                  frame_velocity_[2] != 0.0;
  if (has_external_ && !moving_frame_) static_v_ext_ = v_ext_.sample(grid_);
}

const ComplexField* Propagator::external_samples(double t) const {
  if (!has_external_) return nullptr;
  if (!moving_frame_) return &static_v_ext_;
  potentials::Point offset{frame_velocity_[0] * t, frame_velocity_[1] * t,
                           frame_velocity_[2] * t};
  scratch_v_ext_ = v_ext_.sample(grid_, offset);
  return &scratch_v_ext_;
}

namespace {

// u <- e^{-i dt A} u for a real multiplier A.
void phase_rotate(ComplexField& u, const ComplexField& A, double dt) {
  for (std::size_t i = 0; i < u.size(); ++i) u[i] *= std::polar(1.0, -dt * A[i].real());
}

void half_kick(OrbitalSet& u, double dt) {
  for (auto& orb : u.orbitals) orb = spectral::free_propagate(orb, 0.5 * dt);
}

}  // namespace

void Propagator::nonlinear_substep(OrbitalSet& u, double t_mid) const {
  const double dt = cfg_.dt;
  const int N = u.count();
  const ComplexField* vext = external_samples(t_mid);

  // Frozen diagonal multiplier A_j = Q_H(., u) + V_ext.
  std::vector<ComplexField> A(N);
  for (int j = 0; j < N; ++j) {
    A[j] = work_.hartree_multiplier(u, j);
    if (vext)
      for (std::size_t i = 0; i < A[j].size(); ++i) A[j][i] += (*vext)[i].real();
  }

  const bool coupled = work_.has_interaction() && N > 1;
  if (!coupled) {
    for (int j = 0; j < N; ++j) phase_rotate(u.orbitals[j], A[j], dt);
    return;
  }

  // Two-stage explicit midpoint for the Fock coupling in the interaction
  // picture of the frozen rotation:
  //   u_half_j = e^{-i dt/2 A_j} (u_j - i dt/2 F_j(u))
  //   u_j      = e^{-i dt A_j} u_j - i dt e^{-i dt/2 A_j} F_j(u_half)
  const Complex mihalf{0.0, -0.5 * dt};
  OrbitalSet half = u;
  for (int j = 0; j < N; ++j) {
    ComplexField f = work_.fock(u, j);
    auto& hj = half.orbitals[j];
    for (std::size_t i = 0; i < hj.size(); ++i) hj[i] += mihalf * f[i];
    phase_rotate(hj, A[j], 0.5 * dt);
  }

  const Complex midt{0.0, -dt};
  std::vector<ComplexField> f2(N);
  for (int j = 0; j < N; ++j) f2[j] = work_.fock(half, j);
  for (int j = 0; j < N; ++j) {
    phase_rotate(f2[j], A[j], 0.5 * dt);
    auto& uj = u.orbitals[j];
    phase_rotate(uj, A[j], dt);
    for (std::size_t i = 0; i < uj.size(); ++i) uj[i] += midt * f2[j][i];
  }
}

void Propagator::step(OrbitalSet& u) const {
  const double dt = cfg_.dt;
  const double t_mid = u.time + 0.5 * dt;

  half_kick(u, dt);
  nonlinear_substep(u, t_mid);
  half_kick(u, dt);
  u.time += dt;

  for (int j = 0; j < u.count(); ++j) {
    const double nrm = spectral::l2_norm(u.orbitals[j]);
    if (!std::isfinite(nrm))
      throw std::runtime_error("Propagator::step: NaN in orbital " + std::to_string(j) +
                               " at t = " + std::to_string(u.time));
  }
}

OrbitalSet step(const OrbitalSet& u, const PotentialModel& v_int, const PotentialModel& v_ext,
                const StepperConfig& cfg) {
  Propagator prop(u.grid_ptr(), v_int, v_ext, cfg);
  OrbitalSet out = u;
  prop.step(out);
  return out;
}

}  // namespace hfscatter::dynamics
