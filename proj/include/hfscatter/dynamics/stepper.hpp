#pragma once

#include <memory>

#include "hfscatter/dynamics/terms.hpp"

namespace hfscatter::dynamics {

enum class Scheme { strang };

struct StepperConfig {
  double dt = 0.01;
  Scheme scheme = Scheme::strang;
  bool dealias = false;

  void validate() const;
};

/// Second-order Strang propagator for the Hartree-Fock equation.
///
/// One step: half free flight, nonlinear substep, half free flight.  In the
/// nonlinear substep Q_H + V_ext is a real multiplier frozen at the substep
/// midpoint time and applied as an exact phase rotation; the non-diagonal
/// Fock coupling is advanced by a two-stage explicit midpoint rule in the
/// interaction picture of that rotation.
///
/// An optional frame velocity v turns V_ext into the translated sample
/// V_ext(x + v t), which realizes a Galilean-boosted scattering run on a
/// static grid (the interaction term is frame-invariant).
class Propagator {
 public:
  Propagator(Grid::Ptr grid, const PotentialModel& v_int, const PotentialModel& v_ext,
             StepperConfig cfg, std::array<double, 3> frame_velocity = {0.0, 0.0, 0.0});

  void step(OrbitalSet& u) const;

  const StepperConfig& config() const { return cfg_; }
  const TermWorkspace& workspace() const { return work_; }

  /// V_ext(x + v t) sampled for the given time; cached when static.
  const ComplexField* external_samples(double t) const;

  bool has_external() const { return has_external_; }

 private:
  void nonlinear_substep(OrbitalSet& u, double t_mid) const;

  Grid::Ptr grid_;
  PotentialModel v_ext_;
  StepperConfig cfg_;
  std::array<double, 3> frame_velocity_{0.0, 0.0, 0.0};
  bool moving_frame_ = false;
  bool has_external_ = false;
  TermWorkspace work_;
  ComplexField static_v_ext_;           // cached when the frame is static
  mutable ComplexField scratch_v_ext_;  // reused sample buffer when moving
};

/// Single spec-level step with a freshly built propagator.
OrbitalSet step(const OrbitalSet& u, const PotentialModel& v_int, const PotentialModel& v_ext,
                const StepperConfig& cfg);

}  // namespace hfscatter::dynamics
