#pragma once

#include <vector>

#include "hfscatter/dynamics/orbital_set.hpp"
#include "hfscatter/potentials/potential_model.hpp"

namespace hfscatter::dynamics {

/// One evaluation of the pseudo-conformal functional
///   Q(t) = sum_j ||grad v_j||^2 + t^2 G(t, v)
/// for the rescaled variables v_j(t) = (it)^{n/2} e^{-it|x|^2/2} u_j(t, tx),
/// rewritten in the original variables (no resampling):
///   sum_j ||grad v_j||^2 = sum_j ||(t grad - i x) u_j(t)||^2,
/// and the potential terms of G, Theta transform into plain integrals of
/// u against V and W = V + x.grad V / 2.  Along an exact solution
/// dQ/dt = t Theta <= 0 under the monotone-r^2V assumptions.
struct PseudoConformalSample {
  double t = 0.0;
  double value = 0.0;          // Q(t)
  double gradient_part = 0.0;  // sum_j ||(t grad - i x) u_j||^2
  double G = 0.0;
  double Theta = 0.0;
};

PseudoConformalSample pseudo_conformal_diagnostic(const OrbitalSet& u,
                                                  const potentials::PotentialModel& v_int,
                                                  const potentials::PotentialModel& v_ext);

/// Fit of log ||u_j(t)||_inf against -(n/2) log t + (3/4) log log t + const
/// over samples with t >= e.
struct DecayFitReport {
  std::vector<double> fitted_constant;  // per orbital, C in C t^{-n/2}(log t)^{3/4}
  std::vector<double> rms_residual;     // per orbital, in log space
  std::vector<double> envelope_constant;  // max_t sup|u| t^{n/2} (log t)^{-3/4}
};

DecayFitReport decay_envelope_check(const std::vector<double>& times,
                                    const std::vector<std::vector<double>>& sup_norms, int dim);

}  // namespace hfscatter::dynamics
