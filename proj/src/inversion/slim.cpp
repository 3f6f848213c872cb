#include "hfscatter/inversion/slim.hpp"

#include <stdexcept>

namespace hfscatter::inversion {

Extrapolation richardson_limit(const std::vector<double>& speeds,
                               const std::vector<Complex>& values) {
  const int n = static_cast<int>(speeds.size());
  if (n < 3) throw std::invalid_argument("richardson_limit: need at least 3 speeds");

  Eigen::MatrixXcd A(n, 3);
  Eigen::VectorXcd y(n);
  for (int i = 0; i < n; ++i) {
    const double x = 1.0 / speeds[i];
    A(i, 0) = 1.0;
    A(i, 1) = x;
    A(i, 2) = x * x;
    y[i] = values[i];
  }
  Eigen::VectorXcd coef = A.colPivHouseholderQr().solve(y);

  Extrapolation out;
  out.limit = coef[0];
  if (n > 3) {
    out.residual = (A * coef - y).norm();
  } else {
    // exactly determined: gauge the model error against the linear
    // extrapolation through the two fastest probes
    const double x1 = 1.0 / speeds[n - 2], x2 = 1.0 / speeds[n - 1];
    const Complex lin = values[n - 1] + (values[n - 1] - values[n - 2]) * x2 / (x1 - x2);
    out.residual = std::abs(coef[0] - lin);
  }
  return out;
}

SlimSweep collect_slim(const ProbeConfig& cfg, const spectral::Grid::Ptr& grid, int orbital,
                       const std::vector<double>& lambda_grid,
                       const dynamics::PotentialModel& v_int,
                       const dynamics::PotentialModel& v_ext,
                       const scattering::ScatterConfig& scatter_cfg,
                       bool subtract_known_second, double residual_tol) {
  if (cfg.speeds.size() < 3)
    throw std::invalid_argument("collect_slim: extrapolation needs at least 3 speeds");

  SlimSweep sweep;
  sweep.points.reserve(lambda_grid.size());

  for (double lam : lambda_grid) {
    ProbeConfig pc = cfg;
    pc.lambda = cfg.lambda + lam;

    Complex second_pairing{0.0, 0.0};
    if (subtract_known_second && !v_ext.is_zero()) {
      auto dil = pc.dilated_states();
      second_pairing = probe::xray_pairing(
          v_ext, dil[static_cast<std::size_t>(orbital)].materialize(grid), pc.direction);
    }

    std::vector<Complex> values;
    values.reserve(pc.speeds.size());
    for (double v : pc.speeds) {
      auto m = probe::compute_I(pc, grid, v, v_int, v_ext, scatter_cfg);
      Complex val = m.I[static_cast<std::size_t>(orbital)];
      if (subtract_known_second) val -= second_pairing / v;
      values.push_back(val);
    }

    Extrapolation ex = richardson_limit(pc.speeds, values);
    SlimPoint pt;
    pt.lambda = lam;
    pt.value = ex.limit;
    pt.residual = ex.residual;
    pt.flagged = ex.residual > residual_tol;
    sweep.points.push_back(pt);
  }
  return sweep;
}

}  // namespace hfscatter::inversion
