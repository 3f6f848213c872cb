#include "hfscatter/probe/probe.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hfscatter/dynamics/terms.hpp"
#include "hfscatter/spectral/fourier.hpp"

namespace hfscatter::probe {

using dynamics::OrbitalSet;
using dynamics::TermWorkspace;
using spectral::Space;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

void ProbeConfig::validate(int dim) const {
  if (base_states.empty()) throw std::invalid_argument("ProbeConfig: no base states");
  if (lambda <= -1.0) throw std::invalid_argument("ProbeConfig: lambda must be > -1");
  double norm2 = 0.0;
  for (int a = 0; a < dim; ++a) norm2 += direction[a] * direction[a];
  if (std::abs(norm2 - 1.0) > 1e-9)
    throw std::invalid_argument("ProbeConfig: direction must be a unit vector");
  for (std::size_t i = 1; i < speeds.size(); ++i)
    if (!(speeds[i] > speeds[i - 1]))
      throw std::invalid_argument("ProbeConfig: speeds must be strictly increasing");
}

std::array<double, 3> ProbeConfig::velocity(double speed) const {
  return {speed * direction[0], speed * direction[1], speed * direction[2]};
}

std::vector<GaussianState> ProbeConfig::dilated_states() const {
  std::vector<GaussianState> out;
  out.reserve(base_states.size());
  for (const auto& s : base_states) out.push_back(s.dilate(lambda));
  return out;
}

std::vector<S0State> make_probe(const ProbeConfig& cfg, const Grid::Ptr& grid, double speed) {
  cfg.validate(grid->dim());
  auto v = cfg.velocity(speed);
  std::vector<S0State> out;
  out.reserve(cfg.base_states.size());
  for (const auto& s : cfg.base_states) {
    GaussianState probe = s.dilate(cfg.lambda).boost(v);
    if (probe.band_radius() > grid->max_frequency())
      throw std::runtime_error("make_probe: frequency support wraps at speed " +
                               std::to_string(speed) + " (band " +
                               std::to_string(probe.band_radius()) + " exceeds " +
                               std::to_string(grid->max_frequency()) + ")");
    out.emplace_back(probe.materialize(grid));
  }
  return out;
}

ProbeMeasurement compute_I(const ProbeConfig& cfg, const Grid::Ptr& grid, double speed,
                           const PotentialModel& v_int, const PotentialModel& v_ext,
                           const ScatterConfig& scatter_cfg) {
  cfg.validate(grid->dim());
  std::vector<ComplexField> phi;
  for (const auto& s : cfg.dilated_states()) phi.push_back(s.materialize(grid));

  scattering::ScatterOutput out =
      scattering::apply_S(phi, v_int, v_ext, scatter_cfg, cfg.velocity(speed));

  ProbeMeasurement m;
  m.I = out.pairing;
  m.consistency_residual = out.consistency_residual;
  m.flagged = out.flagged;
  return m;
}

ComplexField kernel_H(const std::vector<GaussianState>& base, const Grid::Ptr& grid, int j,
                      double lambda, const KernelConfig& kcfg) {
  const int N = static_cast<int>(base.size());
  if (j < 0 || j >= N) throw std::out_of_range("kernel_H: orbital index");
  const int n = grid->dim();

  // Dilated states in frequency space once; free flow is a multiplier.
  std::vector<ComplexField> phihat;
  phihat.reserve(N);
  for (const auto& s : base) phihat.push_back(spectral::fourier(s.dilate(lambda).materialize(grid)));

  const int K = static_cast<int>(std::round(2.0 * kcfg.half_window / kcfg.dt));
  ComplexField H(grid, Space::frequency);
  double last_integrand_sup = 0.0;

  for (int i = 0; i <= K; ++i) {
    const double t = -kcfg.half_window + i * kcfg.dt;
    const double w = (i == 0 || i == K) ? 0.5 * kcfg.dt : kcfg.dt;

    std::vector<ComplexField> u(N);
    for (int k = 0; k < N; ++k) {
      ComplexField uhat = phihat[k];
      spectral::apply_free_multiplier(uhat, t);
      u[k] = spectral::inverse_fourier(uhat);
    }

    ComplexField rho_j(grid, Space::position);
    for (std::size_t q = 0; q < rho_j.size(); ++q) rho_j[q] = std::norm(u[j][q]);
    ComplexField rho_j_hat = spectral::fourier(rho_j);

    ComplexField slice(grid, Space::frequency);
    for (int k = 0; k < N; ++k) {
      if (k == j) continue;  // the k = j direct and exchange parts coincide
      ComplexField rho_k(grid, Space::position);
      ComplexField pair(grid, Space::position);
      for (std::size_t q = 0; q < rho_k.size(); ++q) {
        rho_k[q] = std::norm(u[k][q]);
        pair[q] = u[j][q] * std::conj(u[k][q]);
      }
      ComplexField rho_k_hat = spectral::fourier(rho_k);
      ComplexField pair_hat = spectral::fourier(pair);
      for (std::size_t q = 0; q < slice.size(); ++q)
        slice[q] += rho_k_hat[q] * std::conj(rho_j_hat[q]) - Complex{std::norm(pair_hat[q]), 0.0};
    }
    for (std::size_t q = 0; q < H.size(); ++q) H[q] += w * slice[q];
    if (i == 0 || i == K) last_integrand_sup = std::max(last_integrand_sup,
                                                        spectral::sup_norm(slice));
  }

  // Free-flight overlaps decay ~ t^{-n}; model the missed tail accordingly.
  const double tail = (n > 1)
                          ? last_integrand_sup * kcfg.half_window / (n - 1)
                          : last_integrand_sup * kcfg.half_window;
  if (tail > kcfg.tail_tol) {
    const double required = kcfg.half_window *
                            std::pow(tail / kcfg.tail_tol, 1.0 / std::max(1, n - 1));
    throw std::runtime_error("kernel_H: time-window tail " + std::to_string(tail) +
                             " above tolerance; increase half_window to about " +
                             std::to_string(required));
  }

  const double pairing_scale = std::pow(2.0 * kPi, 0.5 * n);
  for (std::size_t q = 0; q < H.size(); ++q) H[q] *= pairing_scale;
  return H;
}

Complex integrate_against(const ComplexField& vhat, const ComplexField& H) {
  if (vhat.space() != Space::frequency || H.space() != Space::frequency)
    throw std::invalid_argument("integrate_against: frequency-space fields expected");
  Complex acc{0.0, 0.0};
  for (std::size_t q = 0; q < H.size(); ++q) acc += vhat[q] * H[q];
  return acc * H.grid().frequency_weight();
}

Complex xray_pairing(const PotentialModel& v_ext, const ComplexField& phi_j,
                     const std::array<double, 3>& direction) {
  const Grid& g = phi_j.grid();
  const int n = g.dim();
  potentials::Point theta{direction[0], direction[1], direction[2]};
  Complex acc{0.0, 0.0};
  for (std::size_t i = 0; i < phi_j.size(); ++i) {
    auto xp = g.position_point(i);
    // project the node onto theta-perp; the X-ray value only depends on it
    double dot = 0.0;
    for (int a = 0; a < n; ++a) dot += xp[a] * theta[a];
    potentials::Point perp = xp;
    for (int a = 0; a < n; ++a) perp[a] -= dot * theta[a];
    const double xray = v_ext.has_analytic_fourier()
                            ? potentials::xray_analytic(v_ext, perp, theta, n)
                            : potentials::xray_numeric(v_ext, perp, theta, n);
    acc += xray * Complex{std::norm(phi_j[i]), 0.0};
  }
  return acc * g.position_weight();
}

ProbeResult expansion_check(const ProbeConfig& cfg, const Grid::Ptr& grid,
                            const PotentialModel& v_int, const PotentialModel& v_ext,
                            const ScatterConfig& scatter_cfg, const KernelConfig& kcfg) {
  cfg.validate(grid->dim());
  if (cfg.speeds.size() < 2)
    throw std::invalid_argument("expansion_check: need at least two speeds");
  const int N = static_cast<int>(cfg.base_states.size());

  ProbeResult result;

  // Leading term: oracle transform of V_int against the matched-window kernel.
  ComplexField vhat = v_int.has_analytic_fourier()
                          ? v_int.analytic_fourier(grid)
                          : spectral::fourier(v_int.sample(grid));
  std::vector<Complex> leading(N);
  for (int j = 0; j < N; ++j) {
    ComplexField H = kernel_H(cfg.base_states, grid, j, cfg.lambda, kcfg);
    leading[j] = integrate_against(vhat, H);
  }

  // Second term pairing via the line-integral oracle, speed-independent part.
  std::vector<Complex> xpair(N);
  auto dilated = cfg.dilated_states();
  for (int j = 0; j < N; ++j) {
    if (v_ext.is_zero()) continue;
    xpair[j] = xray_pairing(v_ext, dilated[j].materialize(grid), cfg.direction);
  }

  std::vector<double> max_rem;
  for (double v : cfg.speeds) {
    ProbeMeasurement m = compute_I(cfg, grid, v, v_int, v_ext, scatter_cfg);
    if (m.flagged)
      result.warnings.push_back("scattering flagged at speed " + std::to_string(v));
    double worst = 0.0;
    for (int j = 0; j < N; ++j) {
      ProbeRow row;
      row.j = j;
      row.speed = v;
      row.I = m.I[j];
      row.leading = leading[j];
      row.second = xpair[j] / v;
      row.remainder = row.I - row.leading - row.second;
      worst = std::max(worst, std::abs(row.remainder));
      result.rows.push_back(row);
    }
    max_rem.push_back(worst);
  }

  for (std::size_t i = 1; i < max_rem.size(); ++i)
    if (max_rem[i] > max_rem[i - 1]) result.monotone_remainder = false;
  if (!result.monotone_remainder)
    result.warnings.push_back("remainder is not monotone in |v|; grid artifacts suspected");

  // least-squares slope of log|remainder| against log|v|
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n_pts = static_cast<double>(cfg.speeds.size());
  for (std::size_t i = 0; i < cfg.speeds.size(); ++i) {
    const double x = std::log(cfg.speeds[i]);
    const double y = std::log(std::max(max_rem[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  result.remainder_slope = (n_pts * sxy - sx * sy) / (n_pts * sxx - sx * sx);
  return result;
}

ComplexField second_order_extract(const ProbeConfig& cfg, const Grid::Ptr& grid, double speed,
                                  int j, const PotentialModel& v_int,
                                  const PotentialModel& v_ext, const ScatterConfig& scatter_cfg) {
  cfg.validate(grid->dim());
  const int N = static_cast<int>(cfg.base_states.size());
  if (j < 0 || j >= N) throw std::out_of_range("second_order_extract: orbital index");

  std::vector<ComplexField> phi;
  std::vector<ComplexField> phihat;
  for (const auto& s : cfg.dilated_states()) {
    phi.push_back(s.materialize(grid));
    phihat.push_back(spectral::fourier(phi.back()));
  }

  TermWorkspace work(grid, v_int);
  PotentialModel vext = v_ext;
  vext.validate();
  const bool has_ext = !vext.is_zero();
  const auto vel = cfg.velocity(speed);
  const int K = scatter_cfg.step_count();

  // Accumulates F(P_j(t) - N_j(U_0(t) phi)) pulled back by e^{+i t H_0};
  // the interaction channel cancels up to the scattering correction, the
  // external sweep survives.
  ComplexField acc(grid, Space::frequency);

  auto observer = [&](double t, const OrbitalSet& u) {
    const int i = static_cast<int>(std::round((t + scatter_cfg.half_window) / scatter_cfg.dt));
    const double w = (i == 0 || i == K) ? 0.5 * scatter_cfg.dt : scatter_cfg.dt;

    ComplexField vext_sample;
    const ComplexField* vext_ptr = nullptr;
    if (has_ext) {
      vext_sample = vext.sample(grid, {vel[0] * t, vel[1] * t, vel[2] * t});
      vext_ptr = &vext_sample;
    }
    ComplexField p = work.rhs(u, j, vext_ptr);

    if (work.has_interaction() && N > 1) {
      std::vector<ComplexField> flow(N);
      for (int k = 0; k < N; ++k) {
        ComplexField fh = phihat[k];
        spectral::apply_free_multiplier(fh, t);
        flow[k] = spectral::inverse_fourier(fh);
      }
      OrbitalSet free_set(std::move(flow), t);
      p -= work.n_term(free_set, j);
    }

    ComplexField phat = spectral::fourier(p);
    spectral::apply_free_multiplier(phat, -t);
    for (std::size_t q = 0; q < acc.size(); ++q) acc[q] += w * phat[q];
  };

  scattering::solve_scattering_solution(phi, v_int, vext, scatter_cfg, 0, vel, observer);

  for (std::size_t q = 0; q < acc.size(); ++q) acc[q] *= speed;
  return spectral::inverse_fourier(acc);
}

double sweep_half_window(const Grid& grid, const PotentialModel& v_ext, double speed, double dt) {
  const double reach = 0.5 * grid.half_width() + std::min(v_ext.support_radius(),
                                                          2.0 * grid.half_width());
  double T = 4.0 * reach / speed;
  const int steps = std::max(1, static_cast<int>(std::ceil(T / dt)));
  return steps * dt;
}

}  // namespace hfscatter::probe
