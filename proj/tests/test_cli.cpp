#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "hfscatter/cli/manifest.hpp"
#include "hfscatter/cli/pipelines.hpp"

using namespace hfscatter::cli;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

std::string minimal_config(const std::string& extra = "") {
  return R"({
  "grid": {"dim": 1, "points_per_axis": 64, "half_width": 10.0},
  "orbitals": [
    {"amplitude": 0.3, "center": [-0.5], "width": 1.0, "momentum": [0.2], "phase": 0.0},
    {"amplitude": 0.25, "center": [0.6], "width": 1.2, "momentum": [-0.1], "phase": 0.4}
  ],
  "potentials": {
    "interaction": {"kind": "gaussian", "amplitude": 0.4, "width_or_power": 1.0},
    "external": {"kind": "gaussian", "amplitude": 0.3, "width_or_power": 1.2}
  },
  "scatter": {"half_window": 1.0, "dt": 0.0625},
  "seed": 42,
  "output_dir": "cli_out")" +
         extra + "\n}\n";
}

}  // namespace

TEST_CASE("config: unknown keys and invalid values name the field") {
  CHECK_THROWS_WITH_AS(parse_config(R"({"grid": {"dim": 1, "points_per_axis": 64,
      "half_width": 4.0, "bogus": 1}, "orbitals": [], "potentials": {},
      "scatter": {"half_window": 1.0, "dt": 0.1}})"),
                       doctest::Contains("grid.bogus"), ConfigError);

  std::string bad_dt = minimal_config();
  bad_dt.replace(bad_dt.find("\"dt\": 0.0625"), 12, "\"dt\": -0.05");
  CHECK_THROWS_WITH_AS(parse_config(bad_dt), doctest::Contains("scatter.dt"), ConfigError);

  CHECK_THROWS_AS(parse_config("{not json"), ConfigError);
}

TEST_CASE("config: load-then-serialize is idempotent") {
  const std::string once = serialize_config(parse_config(minimal_config()));
  const std::string twice = serialize_config(parse_config(once));
  CHECK(once == twice);
}

TEST_CASE("cmd_simulate: free theory writes a faithful manifest") {
  std::string cfg_text = minimal_config();
  cfg_text.replace(cfg_text.find("\"amplitude\": 0.4"), 16, "\"amplitude\": 0.0");
  cfg_text.replace(cfg_text.find("\"amplitude\": 0.3, \"width_or_power\": 1.2"), 39,
                   "\"amplitude\": 0.0, \"width_or_power\": 1.2");
  ScenarioConfig cfg = parse_config(cfg_text);
  cmd_simulate(cfg, "cli_sim_free", 1);

  nlohmann::json diag = nlohmann::json::parse(read_file("cli_sim_free/diagnostics.json"));
  CHECK(diag["free_flight_residual"].get<double>() <= 1e-10);

  // every listed file exists and its checksum matches
  nlohmann::json manifest = nlohmann::json::parse(read_file("cli_sim_free/manifest.json"));
  REQUIRE(manifest["files"].size() > 2);
  for (const auto& f : manifest["files"]) {
    const std::string path = f["path"].get<std::string>();
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(file_checksum(path)));
    CHECK(f["checksum"].get<std::string>() == buf);
  }
}

TEST_CASE("cmd_probe: deterministic outputs for identical config and seed") {
  std::string cfg_text = minimal_config(R"(,
  "probe": {"direction": [1.0], "speeds": [4.0, 8.0]},
  "kernel": {"dt": 0.0625})");
  ScenarioConfig cfg = parse_config(cfg_text);
  cmd_probe(cfg, "cli_probe_a", 1);
  cmd_probe(cfg, "cli_probe_b", 1);
  CHECK(read_file("cli_probe_a/probe_results.csv") == read_file("cli_probe_b/probe_results.csv"));
  CHECK(read_file("cli_probe_a/probe_summary.csv") == read_file("cli_probe_b/probe_summary.csv"));
}

TEST_CASE("cmd_invert_vint: synthetic mode, reports, and noise determinism") {
  std::string cfg_text = minimal_config(R"(,
  "probe": {"direction": [1.0], "speeds": [4.0, 8.0, 16.0]},
  "kernel": {"dt": 0.125},
  "inversion": {"lambda_grid": {"start": 0.0, "step": 0.3, "count": 4},
                "rule": "discrepancy", "noise_trials": 3, "noise_level": 0.01})");
  ScenarioConfig cfg = parse_config(cfg_text);
  cmd_invert_vint(cfg, "cli_vint_a", 1);
  cmd_invert_vint(cfg, "cli_vint_b", 1);
  CHECK(read_file("cli_vint_a/error_report.json") == read_file("cli_vint_b/error_report.json"));
  CHECK(read_file("cli_vint_a/singular_spectrum.csv") ==
        read_file("cli_vint_b/singular_spectrum.csv"));

  nlohmann::json report = nlohmann::json::parse(read_file("cli_vint_a/error_report.json"));
  CHECK(report["in_span_relative_error"].get<double>() < 1e-8);
  CHECK(report["noise"]["trials"].get<int>() == 3);

  ScenarioConfig missing = parse_config(minimal_config());
  CHECK_THROWS_WITH_AS(cmd_invert_vint(missing, "cli_vint_c", 1),
                       doctest::Contains("inversion.lambda_grid"), ConfigError);
}

TEST_CASE("cli binary: exit codes for success, config error, numeric failure") {
  write_file("cli_ok.json", minimal_config());
  write_file("cli_bad.json", "{\"grid\": {\"dim\": 7}}");

  const std::string bin = HFSCATTER_BIN;
  CHECK(std::system((bin + " simulate --config cli_ok.json --out cli_exit0 > /dev/null 2>&1")
                        .c_str()) == 0);
  const int bad = std::system(
      (bin + " simulate --config cli_bad.json > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(bad) == 1);
  // probe without speeds is a config-contract failure as well
  const int missing = std::system(
      (bin + " probe --config cli_ok.json --out cli_exitp > /dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(missing) == 1);
}
