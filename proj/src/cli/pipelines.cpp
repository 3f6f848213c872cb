#include "hfscatter/cli/pipelines.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <random>

#include "hfscatter/cli/manifest.hpp"
#include "hfscatter/dynamics/diagnostics.hpp"
#include "hfscatter/spectral/field_io.hpp"
#include "hfscatter/spectral/fourier.hpp"
#include "hfscatter/util/csv.hpp"

namespace hfscatter::cli {

using nlohmann::json;
using spectral::ComplexField;
using util::CsvWriter;
using util::format_double;

namespace {

class StageClock {
 public:
  explicit StageClock(RunManifest& manifest) : manifest_(manifest) { reset(); }
  void reset() { start_ = std::chrono::steady_clock::now(); }
  void lap(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    manifest_.add_timing(stage, std::chrono::duration<double>(now - start_).count());
    start_ = now;
  }

 private:
  RunManifest& manifest_;
  std::chrono::steady_clock::time_point start_;
};

std::string ensure_dir(const std::string& dir) {
  std::filesystem::create_directories(dir);
  return dir;
}

std::vector<ComplexField> materialize_orbitals(const ScenarioConfig& cfg,
                                               const spectral::Grid::Ptr& grid) {
  std::vector<ComplexField> out;
  out.reserve(cfg.orbitals.size());
  for (const auto& s : cfg.orbitals) out.push_back(s.materialize(grid));
  return out;
}

}  // namespace

void cmd_simulate(const ScenarioConfig& cfg, const std::string& out_dir, int /*threads*/) {
  const std::string dir = ensure_dir(out_dir);
  RunManifest manifest(serialize_config(cfg));
  StageClock clock(manifest);

  auto grid = spectral::make_grid(cfg.grid);
  auto phi = materialize_orbitals(cfg, grid);
  const int N = static_cast<int>(phi.size());
  const int K = cfg.scatter.step_count();
  const int stride = cfg.snapshot_stride > 0 ? cfg.snapshot_stride : std::max(1, K / 8);

  scattering::Trajectory traj =
      scattering::solve_scattering_solution(phi, cfg.v_int, cfg.v_ext, cfg.scatter, stride);
  clock.lap("propagation");

  // trajectory table
  {
    std::vector<std::string> header{"t"};
    for (int j = 0; j < N; ++j) header.push_back("norm" + std::to_string(j));
    for (int j = 0; j < N; ++j) header.push_back("sup" + std::to_string(j));
    CsvWriter csv(dir + "/trajectory.csv", header);
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      std::vector<std::string> row{format_double(traj.times[i])};
      for (double v : traj.norms[i]) row.push_back(format_double(v));
      for (double v : traj.sup_norms[i]) row.push_back(format_double(v));
      csv.row(row);
    }
  }
  manifest.add_file(dir + "/trajectory.csv");

  // snapshots with JSON sidecars
  json diagnostics;
  diagnostics["pseudo_conformal"] = json::array();
  for (std::size_t s = 0; s < traj.snapshots.size(); ++s) {
    const auto& snap = traj.snapshots[s];
    json sidecar;
    sidecar["t"] = snap.time;
    sidecar["norms"] = snap.norms();
    std::vector<double> sups;
    for (const auto& o : snap.orbitals) sups.push_back(spectral::sup_norm(o));
    sidecar["sup_norms"] = sups;
    if (snap.time > 0.0) {
      auto pc = dynamics::pseudo_conformal_diagnostic(snap, cfg.v_int, cfg.v_ext);
      sidecar["pseudo_conformal"] = {{"value", pc.value},
                                     {"gradient_part", pc.gradient_part},
                                     {"G", pc.G},
                                     {"Theta", pc.Theta}};
      diagnostics["pseudo_conformal"].push_back(
          {{"t", pc.t}, {"value", pc.value}, {"G", pc.G}, {"Theta", pc.Theta}});
    }
    char tag[16];
    std::snprintf(tag, sizeof tag, "%04zu", s);
    for (int j = 0; j < N; ++j) {
      const std::string path =
          dir + "/snapshot_" + tag + "_orb" + std::to_string(j) + ".hfsf";
      spectral::write_field(path, snap.orbitals[j]);
      manifest.add_file(path);
    }
    {
      std::ofstream side(dir + "/snapshot_" + std::string(tag) + ".json");
      side << sidecar.dump(2) << "\n";
    }
    manifest.add_file(dir + "/snapshot_" + std::string(tag) + ".json");
  }

  // decay-envelope fit over the t >= e samples when available
  {
    std::vector<std::vector<double>> series(static_cast<std::size_t>(N));
    for (int j = 0; j < N; ++j) {
      for (const auto& sups : traj.sup_norms)
        series[static_cast<std::size_t>(j)].push_back(sups[static_cast<std::size_t>(j)]);
    }
    int late = 0;
    for (double t : traj.times)
      if (t >= std::exp(1.0)) ++late;
    if (late >= 3) {
      auto fit = dynamics::decay_envelope_check(traj.times, series, grid->dim());
      diagnostics["decay_fit"] = {{"fitted_constant", fit.fitted_constant},
                                  {"rms_residual", fit.rms_residual},
                                  {"envelope_constant", fit.envelope_constant}};
    }
  }

  // residual against pure free flight; equals the scattering effect size
  double free_residual = 0.0;
  for (int j = 0; j < N; ++j) {
    ComplexField freeT = spectral::free_propagate(phi[j], cfg.scatter.half_window);
    freeT -= traj.final_state.orbitals[j];
    free_residual = std::max(free_residual, spectral::l2_norm(freeT));
  }
  diagnostics["free_flight_residual"] = free_residual;
  diagnostics["final_norm_drift"] = traj.final_state.norm_drift();
  diagnostics["warnings"] = traj.warnings;

  {
    std::ofstream dj(dir + "/diagnostics.json");
    dj << diagnostics.dump(2) << "\n";
  }
  manifest.add_file(dir + "/diagnostics.json");
  manifest.add_diagnostic("free_flight_residual", free_residual);
  manifest.add_diagnostic("final_norm_drift", traj.final_state.norm_drift());
  clock.lap("outputs");
  manifest.write(dir);
}

void cmd_probe(const ScenarioConfig& cfg, const std::string& out_dir, int /*threads*/) {
  if (cfg.probe.speeds.empty())
    throw ConfigError("config error at probe.speeds: missing input for the probe pipeline");
  const std::string dir = ensure_dir(out_dir);
  RunManifest manifest(serialize_config(cfg));
  StageClock clock(manifest);

  auto grid = spectral::make_grid(cfg.grid);
  probe::ProbeResult result =
      probe::expansion_check(cfg.probe, grid, cfg.v_int, cfg.v_ext, cfg.scatter, cfg.kernel);
  clock.lap("expansion_check");

  {
    CsvWriter csv(dir + "/probe_results.csv",
                  {"j", "speed", "vhat_x", "vhat_y", "vhat_z", "lambda", "re_I", "im_I",
                   "leading", "second", "remainder"});
    for (const auto& row : result.rows) {
      csv.row({CsvWriter::cell(row.j), format_double(row.speed),
               format_double(cfg.probe.direction[0]), format_double(cfg.probe.direction[1]),
               format_double(cfg.probe.direction[2]), format_double(cfg.probe.lambda),
               format_double(row.I.real()), format_double(row.I.imag()),
               format_double(row.leading.real()), format_double(row.second.real()),
               format_double(std::abs(row.remainder))});
    }
  }
  {
    CsvWriter csv(dir + "/probe_summary.csv", {"remainder_slope", "monotone_remainder"});
    csv.row({format_double(result.remainder_slope),
             CsvWriter::cell(result.monotone_remainder ? 1 : 0)});
  }
  manifest.add_file(dir + "/probe_results.csv");
  manifest.add_file(dir + "/probe_summary.csv");
  manifest.add_diagnostic("remainder_slope", result.remainder_slope);
  for (const auto& w : result.warnings) manifest.add_note(w);
  clock.lap("outputs");
  manifest.write(dir);
}

void cmd_invert_vint(const ScenarioConfig& cfg, const std::string& out_dir, int /*threads*/) {
  if (cfg.lambda_grid.empty())
    throw ConfigError("config error at inversion.lambda_grid: missing input");
  if (cfg.vint_mode == VintMode::scattering && cfg.probe.speeds.size() < 3)
    throw ConfigError(
        "config error at probe.speeds: missing input - scattering mode needs >= 3 speeds");
  const std::string dir = ensure_dir(out_dir);
  RunManifest manifest(serialize_config(cfg));
  StageClock clock(manifest);

  auto grid = spectral::make_grid(cfg.grid);
  inversion::FirstKindOperator T =
      inversion::assemble_T(cfg.orbitals, grid, cfg.orbital_index, cfg.probe.lambda,
                            cfg.lambda_grid, cfg.kernel, cfg.band_threshold);
  clock.lap("assemble_T");

  inversion::SingularSystem sys = inversion::singular_system(T);
  manifest.add_diagnostic("svd_verification_residual", sys.verification_residual);
  clock.lap("singular_system");

  // data: synthetic forward multiply, or the extrapolated probe sweep
  ComplexField vhat_true = cfg.v_int.has_analytic_fourier()
                               ? cfg.v_int.analytic_fourier(grid)
                               : spectral::fourier(cfg.v_int.sample(grid));
  Eigen::VectorXcd truth_band = T.restrict(vhat_true);
  Eigen::VectorXcd slim;
  double extrapolation_residual = 0.0;
  if (cfg.vint_mode == VintMode::synthetic) {
    slim = T.matrix * truth_band;
  } else {
    inversion::SlimSweep sweep =
        inversion::collect_slim(cfg.probe, grid, cfg.orbital_index, cfg.lambda_grid, cfg.v_int,
                                cfg.v_ext, cfg.scatter, /*subtract_known_second=*/true);
    slim = sweep.vector();
    for (const auto& p : sweep.points)
      extrapolation_residual = std::max(extrapolation_residual, p.residual);
    manifest.add_diagnostic("extrapolation_residual", extrapolation_residual);
  }
  clock.lap("collect_slim");

  inversion::TruncationSpec rule = cfg.truncation;
  if (rule.rule == inversion::TruncationRule::discrepancy && rule.delta <= 0.0)
    rule.delta = std::max(extrapolation_residual, 1e-12);
  inversion::PicardResult clean = inversion::picard_reconstruct(sys, slim, rule);
  clock.lap("picard");

  {
    CsvWriter csv(dir + "/singular_spectrum.csv", {"n", "mu"});
    for (Eigen::Index k = 0; k < sys.mu.size(); ++k)
      csv.row({CsvWriter::cell(static_cast<int>(k)), format_double(sys.mu[k])});
  }
  {
    CsvWriter csv(dir + "/picard.csv", {"n", "mu", "abs_coefficient", "ratio", "partial_sum"});
    for (std::size_t k = 0; k < clean.diagnostics.ratios.size(); ++k)
      csv.row({CsvWriter::cell(static_cast<int>(k)), format_double(sys.mu[static_cast<Eigen::Index>(k)]),
               format_double(std::abs(clean.diagnostics.coefficients[k])),
               format_double(clean.diagnostics.ratios[k]),
               format_double(clean.diagnostics.partial_sums[k])});
  }
  manifest.add_file(dir + "/singular_spectrum.csv");
  manifest.add_file(dir + "/picard.csv");

  inversion::PositionEstimate est = inversion::vint_from_vhat(T, clean.vhat_band);
  spectral::write_field(dir + "/vhat_estimate.hfsf", T.embed(clean.vhat_band));
  spectral::write_field(dir + "/vint_estimate.hfsf", est.field);
  manifest.add_file(dir + "/vhat_estimate.hfsf");
  manifest.add_file(dir + "/vint_estimate.hfsf");
  manifest.add_diagnostic("imaginary_fraction", est.imaginary_fraction);

  // error report against the phantom (synthetic truth is always known here)
  json report;
  const int n_star = clean.diagnostics.truncation_index;
  Eigen::VectorXcd projected = Eigen::VectorXcd::Zero(truth_band.size());
  for (int k = 0; k < n_star; ++k)
    projected += sys.phi.col(k).dot(truth_band) * sys.phi.col(k);
  const double truth_norm = truth_band.norm();
  report["truncation_index"] = n_star;
  report["in_span_relative_error"] =
      projected.norm() > 0.0 ? (clean.vhat_band - projected).norm() / projected.norm() : 0.0;
  report["null_space_residual_relative"] =
      truth_norm > 0.0 ? (truth_band - projected).norm() / truth_norm : 0.0;
  report["extrapolation_residual"] = extrapolation_residual;

  if (cfg.noise_trials > 0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double level = cfg.noise_level * slim.norm();
    std::vector<double> errors;
    for (int trial = 0; trial < cfg.noise_trials; ++trial) {
      Eigen::VectorXcd noisy = slim;
      for (Eigen::Index i = 0; i < noisy.size(); ++i)
        noisy[i] += level / std::sqrt(2.0 * noisy.size()) *
                    spectral::Complex{gauss(rng), gauss(rng)};
      inversion::TruncationSpec nrule = cfg.truncation;
      if (nrule.rule == inversion::TruncationRule::discrepancy && nrule.delta <= 0.0)
        nrule.delta = 1.2 * level;
      inversion::PicardResult rec = inversion::picard_reconstruct(sys, noisy, nrule);
      Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(truth_band.size());
      for (int k = 0; k < rec.diagnostics.truncation_index; ++k)
        proj += sys.phi.col(k).dot(truth_band) * sys.phi.col(k);
      const double den = proj.norm();
      errors.push_back(den > 0.0 ? (rec.vhat_band - proj).norm() / den : 0.0);
    }
    double mean = 0.0, worst = 0.0;
    for (double e : errors) {
      mean += e;
      worst = std::max(worst, e);
    }
    mean /= static_cast<double>(errors.size());
    report["noise"] = {{"trials", cfg.noise_trials},
                       {"level", cfg.noise_level},
                       {"mean_relative_error", mean},
                       {"max_relative_error", worst},
                       {"per_trial", errors}};
    manifest.add_diagnostic("noise_mean_relative_error", mean);
  }

  {
    std::ofstream rj(dir + "/error_report.json");
    rj << report.dump(2) << "\n";
  }
  manifest.add_file(dir + "/error_report.json");
  clock.lap("outputs");
  manifest.write(dir);
}

void cmd_invert_vext(const ScenarioConfig& cfg, const std::string& out_dir, int threads) {
  if (cfg.probe.speeds.size() < 3)
    throw ConfigError(
        "config error at probe.speeds: missing input - slice extrapolation needs >= 3 speeds");
  const std::string dir = ensure_dir(out_dir);
  RunManifest manifest(serialize_config(cfg));
  StageClock clock(manifest);

  auto grid = spectral::make_grid(cfg.grid);
  xray::PipelineConfig pcfg = cfg.xray;
  pcfg.threads = threads;
  xray::VextRecovery rec =
      xray::full_vext_pipeline(cfg.probe, grid, cfg.orbital_index, cfg.v_int, cfg.v_ext, pcfg);
  clock.lap("pipeline");

  {
    CsvWriter csv(dir + "/sinogram.csv", {"theta_x", "theta_y", "theta_z", "offset1", "offset2",
                                          "value"});
    for (std::size_t d = 0; d < rec.sinogram.directions.size(); ++d) {
      const auto& th = rec.sinogram.directions[d];
      for (std::size_t q = 0; q < rec.sinogram.values[d].size(); ++q) {
        const int i = static_cast<int>(q) % rec.sinogram.offset_count;
        const int j = static_cast<int>(q) / rec.sinogram.offset_count;
        csv.row({format_double(th[0]), format_double(th[1]), format_double(th[2]),
                 format_double(rec.sinogram.offset(i)),
                 format_double(rec.sinogram.dim == 3 ? rec.sinogram.offset(j) : 0.0),
                 format_double(rec.sinogram.values[d][q])});
      }
    }
  }
  manifest.add_file(dir + "/sinogram.csv");

  spectral::write_field(dir + "/vext_estimate.hfsf", rec.estimate);
  manifest.add_file(dir + "/vext_estimate.hfsf");

  json report;
  report["relative_l2_error"] = rec.relative_l2_error;
  report["masked_fraction"] = rec.masked_fraction;
  report["warnings"] = rec.warnings;
  {
    std::ofstream rj(dir + "/error_report.json");
    rj << report.dump(2) << "\n";
  }
  manifest.add_file(dir + "/error_report.json");
  manifest.add_diagnostic("relative_l2_error", rec.relative_l2_error);
  manifest.add_diagnostic("masked_fraction", rec.masked_fraction);
  clock.lap("outputs");
  manifest.write(dir);
}

}  // namespace hfscatter::cli
