#pragma once

#include "hfscatter/cli/config.hpp"

namespace hfscatter::cli {

/// Pipeline entry points.  Config problems throw ConfigError (exit 1 in the
/// CLI); numeric failures throw std::runtime_error (exit 2).  Each writes its
/// outputs plus a checksummed manifest into out_dir.
void cmd_simulate(const ScenarioConfig& cfg, const std::string& out_dir, int threads);
void cmd_probe(const ScenarioConfig& cfg, const std::string& out_dir, int threads);
void cmd_invert_vint(const ScenarioConfig& cfg, const std::string& out_dir, int threads);
void cmd_invert_vext(const ScenarioConfig& cfg, const std::string& out_dir, int threads);

}  // namespace hfscatter::cli
