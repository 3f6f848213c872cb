#pragma once

#include <vector>

#include "hfscatter/scattering/scatter.hpp"

namespace hfscatter::probe {

using dynamics::GaussianState;
using dynamics::PotentialModel;
using scattering::ScatterConfig;
using spectral::Complex;
using spectral::ComplexField;
using spectral::Grid;
using spectral::S0State;

/// High-velocity probe family Phi_v(x, lambda) = e^{i v.x} phi((lambda+1) x).
///
/// Large |v| is never resolved on the grid: runs are evaluated in the moving
/// frame, where the boost turns into a time-translated external potential and
/// the probe reduces to the unboosted dilated state.
struct ProbeConfig {
  std::vector<GaussianState> base_states;     // phi_j descriptors
  std::array<double, 3> direction{1.0, 0.0, 0.0};  // unit vector v-hat
  std::vector<double> speeds;                 // strictly increasing |v| list
  double lambda = 0.0;                        // dilation, > -1

  void validate(int dim) const;
  std::array<double, 3> velocity(double speed) const;
  std::vector<GaussianState> dilated_states() const;
};

/// Materializes the boosted, dilated states on the grid (lab frame).  Errors
/// if any state's frequency support would wrap at the given speed.
std::vector<S0State> make_probe(const ProbeConfig& cfg, const Grid::Ptr& grid, double speed);

struct ProbeMeasurement {
  std::vector<Complex> I;  // I_j(v) per orbital
  double consistency_residual = 0.0;
  bool flagged = false;
};

/// I_j(v) = i <(S - I) Phi_v)_j, (Phi_v)_j>, evaluated in the moving frame.
ProbeMeasurement compute_I(const ProbeConfig& cfg, const Grid::Ptr& grid, double speed,
                           const PotentialModel& v_int, const PotentialModel& v_ext,
                           const ScatterConfig& scatter_cfg);

/// Time quadrature for the free-flight kernel H_j.
struct KernelConfig {
  double half_window = 6.0;  // matched to the scattering window by callers
  double dt = 0.02;
  double tail_tol = 1e-6;
};

/// The quadratic free-flight kernel of the leading expansion term,
///   H_j(xi) = sum_k int [ F(|U0 phi_k|^2) conj F(|U0 phi_j|^2)
///                         - |F(U0 phi_j conj U0 phi_k)|^2 ] dt,
/// scaled so that the leading term is exactly  int Vhat_int(xi) H_j(xi) dxi
/// (the (2 pi)^{n/2} pairing constant is absorbed into H).
ComplexField kernel_H(const std::vector<GaussianState>& base, const Grid::Ptr& grid, int j,
                      double lambda, const KernelConfig& kcfg);

/// <f H, 1>: quadrature of int Vhat(xi) H(xi) dxi on the frequency grid.
Complex integrate_against(const ComplexField& vhat, const ComplexField& H);

/// X-ray pairing <Vtilde_ext(., v-hat) phi_j, phi_j> via the analytic or
/// numeric line-integral oracle.
Complex xray_pairing(const PotentialModel& v_ext, const ComplexField& phi_j,
                     const std::array<double, 3>& direction);

struct ProbeRow {
  int j = 0;
  double speed = 0.0;
  Complex I{};
  Complex leading{};
  Complex second{};
  Complex remainder{};
};

struct ProbeResult {
  std::vector<ProbeRow> rows;
  double remainder_slope = 0.0;  // log|remainder| vs log|v|, worst orbital
  bool monotone_remainder = true;
  std::vector<std::string> warnings;
};

/// Measures I_j over the speed list and compares with the two expansion terms
/// computed from independent oracles (kernel quadrature + line integrals).
ProbeResult expansion_check(const ProbeConfig& cfg, const Grid::Ptr& grid,
                            const PotentialModel& v_int, const PotentialModel& v_ext,
                            const ScatterConfig& scatter_cfg, const KernelConfig& kcfg);

/// w_v(x) = |v| [ i (e^{-iv.x} (S-I) Phi_v)_j (x)
///                - int U_0(-t) N_j(., U_0(t) phi) dt (x) ],
/// whose high-velocity limit is Vtilde_ext(x, v-hat) phi_j(x).  Computed in
/// the moving frame with the Born subtraction on the same time nodes.
ComplexField second_order_extract(const ProbeConfig& cfg, const Grid::Ptr& grid, double speed,
                                  int j, const PotentialModel& v_int,
                                  const PotentialModel& v_ext, const ScatterConfig& scatter_cfg);

/// Sweep window for a probe at the given speed: the potential must traverse
/// the populated half-box, safety factor 4, rounded up to a dt multiple.
double sweep_half_window(const Grid& grid, const PotentialModel& v_ext, double speed, double dt);

}  // namespace hfscatter::probe
