#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "hfscatter/inversion/first_kind.hpp"
#include "hfscatter/xray/xray.hpp"

namespace hfscatter::cli {

/// Configuration problems carry the offending field path in the message.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class VintMode { synthetic, scattering };

struct ScenarioConfig {
  spectral::GridSpec grid;
  std::vector<dynamics::GaussianState> orbitals;
  potentials::PotentialModel v_int;
  potentials::PotentialModel v_ext;
  scattering::ScatterConfig scatter;
  probe::ProbeConfig probe;      // base_states filled from orbitals
  probe::KernelConfig kernel;    // half_window defaults to scatter window

  // inversion
  std::vector<double> lambda_grid;
  inversion::TruncationSpec truncation;
  double band_threshold = 1e-8;
  VintMode vint_mode = VintMode::synthetic;
  int noise_trials = 0;
  double noise_level = 0.0;
  int orbital_index = 0;

  xray::PipelineConfig xray;

  std::uint64_t seed = 0;
  std::string output_dir = "out";
  int snapshot_stride = 0;
};

/// Loads and validates a scenario; unknown keys are hard errors.
ScenarioConfig load_config(const std::string& path);
ScenarioConfig parse_config(const std::string& json_text);

/// Canonical re-serialization; loading then serializing is idempotent.
std::string serialize_config(const ScenarioConfig& cfg);

}  // namespace hfscatter::cli
