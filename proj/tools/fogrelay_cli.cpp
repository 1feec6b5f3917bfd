// Command line front end: optimize, sweep, brute-force, select, montecarlo.
//
// Exit status: 0 on success, 1 for a bad config or invalid arguments,
// 2 for a failure while running.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "fogrelay/errors.hpp"
#include "fogrelay/experiment.hpp"

namespace {

struct CommonOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--config", opts.config_path, "Experiment config (key = value)");
  cmd->add_option("--seed", opts.seed, "RNG seed, overrides the config");
  cmd->add_option("--out", opts.out_dir, "Output directory, overrides the config");
}

fogrelay::ExperimentConfig resolve(const CommonOptions& opts) {
  fogrelay::ExperimentConfig config;
  if (!opts.config_path.empty()) config = fogrelay::load_config(opts.config_path);
  if (opts.seed) config.seed = *opts.seed;
  if (!opts.out_dir.empty()) config.output_dir = opts.out_dir;
  config.validate();
  return config;
}

void report(const std::vector<std::filesystem::path>& files) {
  for (const auto& f : files) fmt::print("wrote {}\n", f.string());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relay placement and power allocation experiments"};
  app.require_subcommand(1);

  CommonOptions opts;

  std::string scheme_name = "olop";
  auto* optimize = app.add_subcommand("optimize", "Run one scheme from the midpoint start");
  optimize->add_option("--scheme", scheme_name, "flfp | olfp | opfl | olop")
      ->check(CLI::IsMember({"flfp", "olfp", "opfl", "olop"}));
  add_common(optimize, opts);

  std::string sweep_var = "power";
  auto* sweep = app.add_subcommand("sweep", "Outage versus relay power or separation");
  sweep->add_option("--var", sweep_var, "power | separation")
      ->required()
      ->check(CLI::IsMember({"power", "separation"}));
  add_common(sweep, opts);

  auto* brute = app.add_subcommand("brute-force", "Grid search for the global minimum");
  add_common(brute, opts);

  auto* select = app.add_subcommand("select", "Relay deployment and counter-based selection");
  add_common(select, opts);

  auto* mc = app.add_subcommand("montecarlo", "Closed form, expansion and simulation side by side");
  add_common(mc, opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  fogrelay::ExperimentConfig config;
  try {
    config = resolve(opts);
  } catch (const fogrelay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (optimize->parsed()) {
      report(fogrelay::cmd_optimize(config, *fogrelay::parse_scheme(scheme_name)));
    } else if (sweep->parsed()) {
      report(fogrelay::cmd_sweep(config, sweep_var == "power" ? fogrelay::SweepVariable::RelayPower
                                                              : fogrelay::SweepVariable::Separation));
    } else if (brute->parsed()) {
      report(fogrelay::cmd_brute_force(config));
    } else if (select->parsed()) {
      report(fogrelay::cmd_select(config));
    } else if (mc->parsed()) {
      report(fogrelay::cmd_montecarlo(config));
    }
  } catch (const fogrelay::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
