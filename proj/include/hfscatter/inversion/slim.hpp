#pragma once

#include <Eigen/Dense>

#include "hfscatter/probe/probe.hpp"

namespace hfscatter::inversion {

using probe::ProbeConfig;
using spectral::Complex;

struct SlimPoint {
  double lambda = 0.0;
  Complex value{};            // extrapolated S_lim(lambda)
  double residual = 0.0;      // extrapolation residual estimate
  bool flagged = false;
};

struct SlimSweep {
  std::vector<SlimPoint> points;
  Eigen::VectorXcd vector() const {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) v[static_cast<Eigen::Index>(i)] = points[i].value;
    return v;
  }
};

/// Fits a0 + a1/v + a2/v^2 through samples y(v) and returns a0 with a
/// residual estimate (fit residual, or drift against the two-point
/// extrapolation when the system is square).
struct Extrapolation {
  Complex limit{};
  double residual = 0.0;
};
Extrapolation richardson_limit(const std::vector<double>& speeds,
                               const std::vector<Complex>& values);

/// Probes I_j(v) over the speed list for each lambda on the grid and
/// extrapolates |v| -> infinity.  When subtract_known_second is set (the
/// synthetic mode with a declared V_ext), the 1/|v| term computed from the
/// line-integral oracle is removed before extrapolating.
SlimSweep collect_slim(const ProbeConfig& cfg, const spectral::Grid::Ptr& grid, int orbital,
                       const std::vector<double>& lambda_grid,
                       const dynamics::PotentialModel& v_int,
                       const dynamics::PotentialModel& v_ext,
                       const scattering::ScatterConfig& scatter_cfg,
                       bool subtract_known_second, double residual_tol = 1e-2);

}  // namespace hfscatter::inversion
