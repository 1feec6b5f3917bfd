#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fogrelay/core_model.hpp"
#include "fogrelay/optimizer.hpp"
#include "fogrelay/oracle.hpp"
#include "fogrelay/schemes.hpp"

namespace fogrelay {

// Everything one experiment run needs. Radio quantities are kept in the
// units of the config file (dBm, dB) and converted by radio().
struct ExperimentConfig {
  double separation_m = 50.0;
  double p_max_dbm = 26.0;
  double snr_threshold_db = 0.0;
  double alpha = 4.0;
  double noise_dbm = -96.0;

  opt::SdmConfig sdm;

  std::vector<Scheme> schemes{kAllSchemes, kAllSchemes + 4};
  Scheme selection_scheme = Scheme::Olfp;
  int n_relays = 4;
  int n_phases = 200;
  int tick_budget = 5;
  int cts_delay = 1;
  std::vector<int> counters;  // injected convergence values; empty = computed

  GridSpec grid;
  int sweep_points = 201;
  std::vector<double> separations{30.0, 35.0, 40.0, 45.0, 48.0, 50.0};
  std::size_t mc_samples = 1000000;

  std::uint64_t seed = 1;
  std::string output_dir = "out";

  RadioParams radio() const;

  // Throws ConfigError naming the violated invariant.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

// Flat `key = value` text, `#` starts a comment. Missing keys keep the
// defaults above, unknown or repeated keys are rejected. Errors carry the
// line number; the parsed config is validated before it is returned.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Writes every key; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

// 17 significant digits.
std::string format_double(double v);

// 5 relay positions along the source-destination segment (offset alternately
// to y = 0 and y = 5 m) times the splits {0.1, 0.3, 0.5, 0.7, 0.9}.
std::vector<RelayState> validation_grid(const RadioParams& params);

enum class SweepVariable { RelayPower, Separation };

// Each command writes into config.output_dir and returns the files written.
std::vector<std::filesystem::path> cmd_optimize(const ExperimentConfig& config, Scheme scheme);
std::vector<std::filesystem::path> cmd_sweep(const ExperimentConfig& config, SweepVariable variable);
std::vector<std::filesystem::path> cmd_brute_force(const ExperimentConfig& config);
std::vector<std::filesystem::path> cmd_select(const ExperimentConfig& config);
std::vector<std::filesystem::path> cmd_montecarlo(const ExperimentConfig& config);

}  // namespace fogrelay
