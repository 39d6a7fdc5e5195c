#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "usc_trio/commands.hpp"
#include "usc_trio/run_config.hpp"

using namespace usc_trio;

namespace {

struct CommonArgs {
  std::string config_path;
  std::vector<std::string> overrides;
};

void add_common(CLI::App* sub, CommonArgs& args) {
  sub->add_option("--config", args.config_path, "key = value run configuration");
  sub->add_option("--set", args.overrides, "key=value override, applied after the file (repeatable)")
      ->take_all();
}

RunConfig resolve(const CommonArgs& args) {
  RunConfig cfg = args.config_path.empty() ? RunConfig{} : load_config(args.config_path);
  for (const auto& o : args.overrides) apply_override(cfg, o);
  return cfg;
}

template <typename Fn>
int with_output(const RunConfig& cfg, Fn&& fn) {
  if (cfg.out_path.empty() || cfg.out_path == "-") return fn(std::cout);
  std::ofstream file(cfg.out_path, std::ios::binary);
  if (!file) {
    std::cerr << "config error: cannot write '" << cfg.out_path << "'\n";
    return exit_code::config_error;
  }
  return fn(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Milburn dynamics of three coupled oscillators in the covariance formalism"};
  app.require_subcommand(1);

  CommonArgs sim_args, sweep_args, verify_args;
  auto* sim = app.add_subcommand("simulate", "time series CSV");
  add_common(sim, sim_args);
  auto* swp = app.add_subcommand("sweep", "parameter sweep CSV");
  add_common(swp, sweep_args);
  auto* ver = app.add_subcommand("verify", "cross-oracle and invariant suites, JSON lines");
  add_common(ver, verify_args);
  VerifyOptions vopts;
  ver->add_flag("--inject-misprinted-s13", vopts.inject_misprinted_s13,
                "use the misprinted mode-1/mode-3 rotation (negative control)");
  ver->add_option("--samples", vopts.random_samples, "random parameter draws per suite")
      ->check(CLI::PositiveNumber);
  ver->add_option("--seed", vopts.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code::config_error;
  }

  const CommonArgs& args = sim->parsed() ? sim_args : swp->parsed() ? sweep_args : verify_args;
  RunConfig cfg;
  try {
    cfg = resolve(args);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return exit_code::config_error;
  }

  return with_output(cfg, [&](std::ostream& out) {
    if (sim->parsed()) return cmd_simulate(cfg, out, std::cerr);
    if (swp->parsed()) return cmd_sweep(cfg, out, std::cerr);
    return cmd_verify(cfg, vopts, out, std::cerr);
  });
}
