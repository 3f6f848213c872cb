#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hfscatter/dynamics/stepper.hpp"
#include "hfscatter/spectral/s0_state.hpp"

namespace hfscatter::scattering {

using dynamics::OrbitalSet;
using dynamics::PotentialModel;
using spectral::Complex;
using spectral::ComplexField;
using spectral::Grid;

/// Time window and quadrature for the Duhamel integral of the scattering
/// operator: psi_j = phi_j + (1/i) \int_{-T}^{T} e^{i t H_0} P_j(., u(t)) dt.
struct ScatterConfig {
  double half_window = 4.0;  // T
  double dt = 0.01;
  double tail_tol = 1e-6;    // budget for the neglected |t| > T part
  bool richardson = false;   // Richardson-extrapolated trapezoid in t
  double norm_budget = 0.5;  // smallness warning threshold on ||phi_j||

  void validate() const;  // T > 0, dt > 0 and dt divides T
  int step_count() const;  // 2T/dt
};

struct ScatterOutput {
  std::vector<ComplexField> psi;  // outgoing data, position space
  double consistency_residual = 0.0;  // max_j ||u_j(T) - U_0(T) psi_j||_2
  double tail_estimate = 0.0;
  bool flagged = false;  // residual exceeded 10 x tail_tol
  std::vector<std::string> warnings;

  /// i <(S - I) phi_j, phi_j>, one value per orbital.
  std::vector<Complex> pairing;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> norms;      // [sample][orbital]
  std::vector<std::vector<double>> sup_norms;  // [sample][orbital]
  std::vector<OrbitalSet> snapshots;           // every snapshot_stride nodes
  OrbitalSet final_state;
  std::vector<std::string> warnings;
};

using NodeObserver = std::function<void(double t, const OrbitalSet& u)>;

/// Imposes incoming asymptotics by free back-propagation, u(-T) = U_0(-T)phi,
/// and advances to +T.  A nonzero frame velocity runs the Galilean-boosted
/// problem: V_ext translated as V_ext(x + v t), interaction unchanged.
Trajectory solve_scattering_solution(const std::vector<ComplexField>& phi,
                                     const PotentialModel& v_int, const PotentialModel& v_ext,
                                     const ScatterConfig& cfg, int snapshot_stride = 0,
                                     std::array<double, 3> frame_velocity = {0.0, 0.0, 0.0},
                                     const NodeObserver& observer = nullptr);

/// Realizes S via the windowed Duhamel integral on the stepper's own time
/// grid (trapezoid), checks the outgoing-asymptotics residual, and reports
/// the pairing i<(S-I)phi, phi>.
ScatterOutput apply_S(const std::vector<ComplexField>& phi, const PotentialModel& v_int,
                      const PotentialModel& v_ext, const ScatterConfig& cfg,
                      std::array<double, 3> frame_velocity = {0.0, 0.0, 0.0});

/// Interaction-only nonlinearity N_j evaluated on the free flow U_0(t)phi.
std::vector<ComplexField> born_N(const std::vector<ComplexField>& phi,
                                 const PotentialModel& v_int, double t);

}  // namespace hfscatter::scattering
