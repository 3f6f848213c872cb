#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>

#include "hfscatter/cli/pipelines.hpp"

namespace {

int resolve_threads(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("HFSCATTER_THREADS")) {
    const int parsed = std::atoi(env);
    if (parsed > 0) return parsed;
  }
  return 1;
}

struct SubArgs {
  std::string config_path;
  std::string out_override;
  int threads = 0;
};

void attach_options(CLI::App* sub, SubArgs& args) {
  sub->add_option("--config", args.config_path, "scenario config file (JSON)")->required();
  sub->add_option("--out", args.out_override, "output directory override");
  sub->add_option("--threads", args.threads, "worker thread count (or HFSCATTER_THREADS)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hfscatter: Hartree-Fock scattering simulator and inverse-problem toolkit"};
  app.require_subcommand(1);

  SubArgs args;
  CLI::App* simulate = app.add_subcommand("simulate", "propagate a scattering solution");
  CLI::App* probe = app.add_subcommand("probe", "high-velocity expansion sweep");
  CLI::App* invert_vint =
      app.add_subcommand("invert-vint", "reconstruct the interaction transform");
  CLI::App* invert_vext = app.add_subcommand("invert-vext", "recover the external potential");
  for (CLI::App* sub : {simulate, probe, invert_vint, invert_vext}) attach_options(sub, args);

  CLI11_PARSE(app, argc, argv);

  try {
    hfscatter::cli::ScenarioConfig cfg = hfscatter::cli::load_config(args.config_path);
    const std::string out = args.out_override.empty() ? cfg.output_dir : args.out_override;
    const int threads = resolve_threads(args.threads);

    if (simulate->parsed()) hfscatter::cli::cmd_simulate(cfg, out, threads);
    if (probe->parsed()) hfscatter::cli::cmd_probe(cfg, out, threads);
    if (invert_vint->parsed()) hfscatter::cli::cmd_invert_vint(cfg, out, threads);
    if (invert_vext->parsed()) hfscatter::cli::cmd_invert_vext(cfg, out, threads);
    return 0;
  } catch (const hfscatter::cli::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 2;
  }
}
