#include <cmath>
#include <mutex>
#include <stdexcept>

#include "hfscatter/util/parallel.hpp"
#include "hfscatter/xray/xray.hpp"

namespace hfscatter::xray {

namespace {

// bilinear (n=2) / trilinear-free (n=3 uses two axes only when sampling a
// plane) interpolation of a real-valued lattice field; zero outside
double interp_field(const ComplexField& f, const std::array<double, 3>& x, bool& inside) {
  const Grid& g = f.grid();
  const int n = g.dim();
  const int M = g.points_per_axis();
  const double h = g.spacing();
  const double L = g.half_width();

  std::array<int, 3> i0{0, 0, 0};
  std::array<double, 3> w{0.0, 0.0, 0.0};
  inside = true;
  for (int a = 0; a < n; ++a) {
    const double pos = (x[a] + L) / h;
    i0[a] = static_cast<int>(std::floor(pos));
    w[a] = pos - i0[a];
    if (i0[a] < 0 || i0[a] + 1 >= M) {
      inside = false;
      return 0.0;
    }
  }
  double acc = 0.0;
  const int corners = 1 << n;
  for (int c = 0; c < corners; ++c) {
    double weight = 1.0;
    std::array<int, 3> idx = i0;
    for (int a = 0; a < n; ++a) {
      if (c & (1 << a)) {
        idx[a] += 1;
        weight *= w[a];
      } else {
        weight *= 1.0 - w[a];
      }
    }
    acc += weight * f[g.ravel(idx)].real();
  }
  return acc;
}

}  // namespace

SliceResult extract_xray_slice(const ProbeConfig& cfg, const Grid::Ptr& grid, int orbital,
                               const PotentialModel& v_int, const PotentialModel& v_ext,
                               const SliceConfig& scfg) {
  cfg.validate(grid->dim());
  if (grid->dim() < 2)
    throw std::invalid_argument("extract_xray_slice: needs dimension >= 2");
  if (cfg.speeds.size() < 3)
    throw std::invalid_argument("extract_xray_slice: extrapolation needs >= 3 speeds");

  // w_v per speed with the sweep-scaled window, then pointwise Richardson.
  std::vector<ComplexField> w_fields;
  for (double v : cfg.speeds) {
    scattering::ScatterConfig sc;
    sc.dt = scfg.dt;
    sc.half_window = probe::sweep_half_window(*grid, v_ext, v, scfg.dt);
    sc.tail_tol = scfg.tail_tol;
    w_fields.push_back(
        probe::second_order_extract(cfg, grid, v, orbital, v_int, v_ext, sc));
  }

  ComplexField w_limit(grid, spectral::Space::position);
  {
    std::vector<Complex> vals(cfg.speeds.size());
    for (std::size_t q = 0; q < w_limit.size(); ++q) {
      for (std::size_t s = 0; s < cfg.speeds.size(); ++s) vals[s] = w_fields[s][q];
      w_limit[q] = inversion::richardson_limit(cfg.speeds, vals).limit;
    }
  }

  // divide by phi_j where it is resolvable
  ComplexField phi = cfg.dilated_states()[static_cast<std::size_t>(orbital)].materialize(grid);
  const double eps_div = scfg.eps_div_rel * spectral::sup_norm(phi);
  ComplexField ratio(grid, spectral::Space::position);
  ComplexField mask(grid, spectral::Space::position);
  for (std::size_t q = 0; q < ratio.size(); ++q) {
    if (std::abs(phi[q]) >= eps_div) {
      ratio[q] = (w_limit[q] / phi[q]).real();
      mask[q] = 1.0;
    }
  }

  // average over lines parallel to the probe direction
  SliceResult out;
  const double s_max =
      scfg.offset_half_width > 0.0 ? scfg.offset_half_width : 0.5 * grid->half_width();
  const int n_off = scfg.offset_count;
  const double ds = 2.0 * s_max / n_off;
  const auto e1 = Sinogram::perp1(cfg.direction);
  const auto e2 = Sinogram::perp2(cfg.direction);
  const double tau_max = 0.5 * grid->half_width();
  const int n_tau = static_cast<int>(std::floor(2.0 * tau_max / grid->spacing()));

  std::size_t masked = 0, total = 0;
  out.offsets.resize(static_cast<std::size_t>(n_off));
  out.profile.resize(static_cast<std::size_t>(n_off), 0.0);
  for (int i = 0; i < n_off; ++i) {
    const double s = (i - n_off / 2) * ds;
    out.offsets[static_cast<std::size_t>(i)] = s;
    double acc = 0.0, wacc = 0.0;
    for (int q = 0; q <= n_tau; ++q) {
      const double tau = -tau_max + q * grid->spacing();
      std::array<double, 3> x{0.0, 0.0, 0.0};
      for (int a = 0; a < grid->dim(); ++a)
        x[a] = s * e1[a] + tau * cfg.direction[a];
      (void)e2;
      bool inside = false;
      const double m = interp_field(mask, x, inside);
      ++total;
      if (!inside || m <= 0.5) {
        ++masked;
        continue;
      }
      acc += interp_field(ratio, x, inside);
      wacc += m;
    }
    out.profile[static_cast<std::size_t>(i)] = wacc > 0.0 ? acc / wacc : 0.0;
  }
  out.masked_fraction = total > 0 ? static_cast<double>(masked) / total : 1.0;
  if (out.masked_fraction > 0.5)
    throw std::runtime_error("extract_xray_slice: insufficient probe support (masked fraction " +
                             std::to_string(out.masked_fraction) + ")");
  return out;
}

VextRecovery full_vext_pipeline(const ProbeConfig& cfg, const Grid::Ptr& grid, int orbital,
                                const PotentialModel& v_int, const PotentialModel& v_ext,
                                const PipelineConfig& pcfg) {
  if (grid->dim() != 2)
    throw std::invalid_argument("full_vext_pipeline: slice assembly is implemented for n = 2");

  VextRecovery out;
  const double s_max = pcfg.slice.offset_half_width > 0.0 ? pcfg.slice.offset_half_width
                                                          : 0.5 * grid->half_width();
  out.sinogram = make_sinogram(2, pcfg.directions, pcfg.slice.offset_count, s_max);

  std::vector<double> masked(static_cast<std::size_t>(pcfg.directions), 0.0);
  std::mutex warn_mutex;
  util::parallel_for(static_cast<std::size_t>(pcfg.directions), pcfg.threads, [&](std::size_t d) {
    ProbeConfig dir_cfg = cfg;
    dir_cfg.direction = out.sinogram.directions[d];
    SliceConfig scfg = pcfg.slice;
    scfg.offset_half_width = s_max;
    try {
      SliceResult slice = extract_xray_slice(dir_cfg, grid, orbital, v_int, v_ext, scfg);
      out.sinogram.values[d] = slice.profile;
      masked[d] = slice.masked_fraction;
    } catch (const std::exception& e) {
      std::lock_guard<std::mutex> lock(warn_mutex);
      out.warnings.push_back("direction " + std::to_string(d) + ": " + e.what());
      throw;
    }
  });
  for (double m : masked) out.masked_fraction = std::max(out.masked_fraction, m);

  InversionOutput inv = invert_xray(out.sinogram, grid, pcfg.riesz_a);
  out.estimate = inv.field;
  for (const auto& w : inv.warnings) out.warnings.push_back(w);

  // synthetic-mode error metric on the resolvable region
  ComplexField phi = cfg.dilated_states()[static_cast<std::size_t>(orbital)].materialize(grid);
  const double eps_div = pcfg.slice.eps_div_rel * spectral::sup_norm(phi);
  double num = 0.0, den = 0.0;
  for (std::size_t q = 0; q < out.estimate.size(); ++q) {
    if (std::abs(phi[q]) < eps_div) continue;
    const auto x = grid->position_point(q);
    const double truth = v_ext.eval(x, grid->dim());
    const double err = out.estimate[q].real() - truth;
    num += err * err;
    den += truth * truth;
  }
  out.relative_l2_error = den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
  return out;
}

}  // namespace hfscatter::xray
