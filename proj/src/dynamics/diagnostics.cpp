#include "hfscatter/dynamics/diagnostics.hpp"

#include <cmath>
#include <stdexcept>

#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::dynamics {

using potentials::PotentialModel;
using spectral::Space;

namespace {
constexpr double kPi = 3.14159265358979323846;

// Samples W = V + x.grad V / 2, the dissipation kernel of the
// pseudo-conformal identity.
ComplexField sample_w(const PotentialModel& m, const Grid::Ptr& grid) {
  ComplexField out(grid, Space::position);
  const int n = grid->dim();
  for (std::size_t i = 0; i < out.size(); ++i) {
    const auto x = grid->position_point(i);
    out[i] = m.eval(x, n) + 0.5 * m.x_dot_grad(x, n);
  }
  return out;
}

double real_weighted_sum(const ComplexField& kernel_hat, const ComplexField& a,
                         const ComplexField& b) {
  // Re (2 pi)^{n/2} \int khat F(a) conj F(b) dxi, inputs already transformed.
  double s = 0.0;
  for (std::size_t i = 0; i < kernel_hat.size(); ++i)
    s += (kernel_hat[i] * a[i] * std::conj(b[i])).real();
  return s * kernel_hat.grid().frequency_weight() *
         std::pow(2.0 * kPi, 0.5 * kernel_hat.grid().dim());
}

}  // namespace

PseudoConformalSample pseudo_conformal_diagnostic(const OrbitalSet& u,
                                                  const PotentialModel& v_int,
                                                  const PotentialModel& v_ext) {
  const double t = u.time;
  if (!(t > 0.0))
    throw std::invalid_argument("pseudo_conformal_diagnostic: requires t > 0");

  const Grid::Ptr grid = u.grid_ptr();
  const int n = grid->dim();
  const int N = u.count();
  const int M = grid->points_per_axis();
  const double wpos = grid->position_weight();

  PseudoConformalSample out;
  out.t = t;

  // sum_j || (t grad - i x) u_j ||^2, spectral gradient.
  for (int j = 0; j < N; ++j) {
    const ComplexField& uj = u.orbitals[j];
    ComplexField uhat = spectral::fourier(uj);
    for (int a = 0; a < n; ++a) {
      ComplexField da = uhat;
      std::array<int, 3> m{0, 0, 0};
      for (std::size_t i = 0; i < da.size(); ++i) {
        da[i] *= Complex{0.0, grid->axis_frequencies()[m[a]]};
        for (int ax = 0; ax < n; ++ax) {
          if (++m[ax] < M) break;
          m[ax] = 0;
        }
      }
      ComplexField ga = spectral::inverse_fourier(da);
      double acc = 0.0;
      for (std::size_t i = 0; i < ga.size(); ++i) {
        const double xa = grid->axis_positions()[grid->unravel(i)[a]];
        acc += std::norm(t * ga[i] - Complex{0.0, xa} * uj[i]);
      }
      out.gradient_part += acc * wpos;
    }
  }

  // External terms: pointwise integrals of V_ext and W_ext against densities.
  std::vector<double> density_ext;  // reused below
  if (!v_ext.is_zero()) {
    ComplexField vsamp = v_ext.sample(grid);
    ComplexField wsamp = sample_w(v_ext, grid);
    for (int j = 0; j < N; ++j) {
      double gv = 0.0, gw = 0.0;
      const auto& vals = u.orbitals[j].values();
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double rho = std::norm(vals[i]);
        gv += vsamp[i].real() * rho;
        gw += wsamp[i].real() * rho;
      }
      out.G += 0.5 * gv * wpos;
      out.Theta += gw * wpos;
    }
  }

  // Interaction terms in frequency space; j = k contributions cancel
  // identically between direct and exchange, so only unordered pairs enter.
  if (!v_int.is_zero() && N > 1) {
    ComplexField vhat = v_int.has_analytic_fourier() ? v_int.analytic_fourier(grid)
                                                     : spectral::fourier(v_int.sample(grid));
    ComplexField what = spectral::fourier(sample_w(v_int, grid));

    std::vector<ComplexField> rho_hat;
    rho_hat.reserve(N);
    for (int k = 0; k < N; ++k) {
      ComplexField rho(grid, Space::position);
      const auto& vals = u.orbitals[k].values();
      for (std::size_t i = 0; i < rho.size(); ++i) rho[i] = std::norm(vals[i]);
      rho_hat.push_back(spectral::fourier(rho));
    }

    for (int j = 0; j < N; ++j) {
      for (int k = j + 1; k < N; ++k) {
        ComplexField pair(grid, Space::position);
        const auto& aj = u.orbitals[j].values();
        const auto& ak = u.orbitals[k].values();
        for (std::size_t i = 0; i < pair.size(); ++i) pair[i] = aj[i] * std::conj(ak[i]);
        ComplexField pair_hat = spectral::fourier(pair);

        const double direct_v = real_weighted_sum(vhat, rho_hat[k], rho_hat[j]);
        const double direct_w = real_weighted_sum(what, rho_hat[k], rho_hat[j]);
        const double exch_v = real_weighted_sum(vhat, pair_hat, pair_hat);
        const double exch_w = real_weighted_sum(what, pair_hat, pair_hat);

        out.G += 2.0 * 0.25 * (direct_v - exch_v);
        out.Theta += 2.0 * (direct_w - exch_w);
      }
    }
  }

  out.value = out.gradient_part + t * t * out.G;
  return out;
}

DecayFitReport decay_envelope_check(const std::vector<double>& times,
                                    const std::vector<std::vector<double>>& sup_norms, int dim) {
  const double e = std::exp(1.0);
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (times[i] >= e) keep.push_back(i);
  if (keep.size() < 3)
    throw std::invalid_argument("decay_envelope_check: need at least 3 samples with t >= e");

  DecayFitReport rep;
  for (const auto& series : sup_norms) {
    if (series.size() != times.size())
      throw std::invalid_argument("decay_envelope_check: ragged sample series");
    double c = 0.0;
    for (auto i : keep) {
      const double model = -0.5 * dim * std::log(times[i]) +
                           0.75 * std::log(std::log(times[i]));
      c += std::log(series[i]) - model;
    }
    c /= static_cast<double>(keep.size());

    double rss = 0.0, env = 0.0;
    for (auto i : keep) {
      const double model = c - 0.5 * dim * std::log(times[i]) +
                           0.75 * std::log(std::log(times[i]));
      const double r = std::log(series[i]) - model;
      rss += r * r;
      env = std::max(env, series[i] * std::pow(times[i], 0.5 * dim) *
                              std::pow(std::log(times[i]), -0.75));
    }
    rep.fitted_constant.push_back(std::exp(c));
    rep.rms_residual.push_back(std::sqrt(rss / static_cast<double>(keep.size())));
    rep.envelope_constant.push_back(env);
  }
  return rep;
}

}  // namespace hfscatter::dynamics
