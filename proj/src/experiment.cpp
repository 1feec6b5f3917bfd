#include "fogrelay/experiment.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fogrelay/errors.hpp"
#include "fogrelay/selection.hpp"

namespace fogrelay {
namespace fs = std::filesystem;

std::string format_double(double v) { return fmt::format("{:.17g}", v); }

// ---------------------------------------------------------------------------
// Config

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  while (!s.empty()) {
    const auto comma = s.find(',');
    out.push_back(trim(s.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    s.remove_prefix(comma + 1);
  }
  return out;
}

template <typename T>
T parse_number(std::string_view s) {
  T value{};
  const auto* end = s.data() + s.size();
  const auto [ptr, ec] = std::from_chars(s.data(), end, value);
  if (ec != std::errc() || ptr != end) throw ConfigError("cannot parse number '" + std::string(s) + "'");
  return value;
}

double parse_real(std::string_view s) {
  const double v = parse_number<double>(s);
  if (!std::isfinite(v)) throw ConfigError("value must be finite");
  return v;
}

template <typename T>
std::string join(const std::vector<T>& values, const std::function<std::string(const T&)>& fmt_one) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt_one(values[i]);
  }
  return out;
}

struct Field {
  std::string_view key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

#define REAL_FIELD(name, member)                                                \
  Field {                                                                       \
    name, [](ExperimentConfig& c, std::string_view v) { c.member = parse_real(v); }, \
        [](const ExperimentConfig& c) { return format_double(c.member); }       \
  }
#define INT_FIELD(name, member, type)                                                  \
  Field {                                                                              \
    name, [](ExperimentConfig& c, std::string_view v) { c.member = parse_number<type>(v); }, \
        [](const ExperimentConfig& c) { return std::to_string(c.member); }             \
  }

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      INT_FIELD("time_slots", sdm.max_iters, int),
      REAL_FIELD("separation_m", separation_m),
      REAL_FIELD("p_max_dbm", p_max_dbm),
      REAL_FIELD("snr_threshold_db", snr_threshold_db),
      REAL_FIELD("alpha", alpha),
      REAL_FIELD("noise_dbm", noise_dbm),
      REAL_FIELD("step_size", sdm.step_size),
      REAL_FIELD("grad_step", sdm.grad_step),
      REAL_FIELD("tol", sdm.tol),
      REAL_FIELD("grad_tol", sdm.grad_tol),
      REAL_FIELD("iota", sdm.mobility_limit_m),
      Field{"line_search",
            [](ExperimentConfig& c, std::string_view v) {
              if (v == "fixed") c.sdm.line_search = opt::LineSearch::FixedStep;
              else if (v == "exact") c.sdm.line_search = opt::LineSearch::ExactLineSearch;
              else throw ConfigError("line_search must be 'fixed' or 'exact'");
            },
            [](const ExperimentConfig& c) {
              return std::string(c.sdm.line_search == opt::LineSearch::FixedStep ? "fixed" : "exact");
            }},
      REAL_FIELD("line_search_max", sdm.line_search_max),
      Field{"schemes",
            [](ExperimentConfig& c, std::string_view v) {
              c.schemes.clear();
              for (auto name : split_list(v)) {
                const auto s = parse_scheme(name);
                if (!s) throw ConfigError("unknown scheme '" + std::string(name) + "'");
                c.schemes.push_back(*s);
              }
            },
            [](const ExperimentConfig& c) {
              return join<Scheme>(c.schemes, [](const Scheme& s) { return std::string(to_string(s)); });
            }},
      Field{"selection_scheme",
            [](ExperimentConfig& c, std::string_view v) {
              const auto s = parse_scheme(v);
              if (!s) throw ConfigError("unknown scheme '" + std::string(v) + "'");
              c.selection_scheme = *s;
            },
            [](const ExperimentConfig& c) { return std::string(to_string(c.selection_scheme)); }},
      INT_FIELD("n_relays", n_relays, int),
      INT_FIELD("n_phases", n_phases, int),
      INT_FIELD("tick_budget", tick_budget, int),
      INT_FIELD("cts_delay", cts_delay, int),
      Field{"counters",
            [](ExperimentConfig& c, std::string_view v) {
              c.counters.clear();
              for (auto item : split_list(v)) c.counters.push_back(parse_number<int>(item));
            },
            [](const ExperimentConfig& c) {
              return join<int>(c.counters, [](const int& n) { return std::to_string(n); });
            }},
      INT_FIELD("n_power", grid.n_power, int),
      INT_FIELD("n_positions", grid.n_positions, int),
      INT_FIELD("sweep_points", sweep_points, int),
      Field{"separations",
            [](ExperimentConfig& c, std::string_view v) {
              c.separations.clear();
              for (auto item : split_list(v)) c.separations.push_back(parse_real(item));
            },
            [](const ExperimentConfig& c) { return join<double>(c.separations, format_double); }},
      INT_FIELD("mc_samples", mc_samples, std::size_t),
      INT_FIELD("seed", seed, std::uint64_t),
      Field{"output_dir", [](ExperimentConfig& c, std::string_view v) { c.output_dir = std::string(v); },
            [](const ExperimentConfig& c) { return c.output_dir; }},
  };
  return table;
}

#undef REAL_FIELD
#undef INT_FIELD

void check(bool ok, const std::string& what) {
  if (!ok) throw ConfigError("invalid config: " + what);
}

}  // namespace

RadioParams ExperimentConfig::radio() const {
  return {dbm_to_watts(noise_dbm), db_to_linear(snr_threshold_db), alpha, dbm_to_watts(p_max_dbm),
          separation_m};
}

void ExperimentConfig::validate() const {
  try {
    radio().validate();
    sdm.validate();
    grid.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  check(!schemes.empty(), "schemes must not be empty");
  check(n_relays >= 1, "n_relays must be >= 1");
  check(n_phases >= 1, "n_phases must be >= 1");
  check(tick_budget >= 0, "tick_budget must be >= 0");
  check(cts_delay >= 0, "cts_delay must be >= 0");
  for (int c : counters) check(c >= 0, "counters must be >= 0");
  check(sweep_points >= 1, "sweep_points must be >= 1");
  check(!separations.empty(), "separations must not be empty");
  for (std::size_t i = 0; i < separations.size(); ++i) {
    check(separations[i] > 0.0, "separations must be > 0");
    check(i == 0 || separations[i] > separations[i - 1], "separations must be ascending");
  }
  check(mc_samples >= kMinMonteCarloSamples, "mc_samples must be >= 1000");
  check(!output_dir.empty(), "output_dir must not be empty");
}

ExperimentConfig parse_config(std::string_view text) {
  ExperimentConfig config;
  std::set<std::string_view> seen;
  int line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(where + "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));

    const auto& table = fields();
    const auto it = std::find_if(table.begin(), table.end(), [&](const Field& f) { return f.key == key; });
    if (it == table.end()) throw ConfigError(where + "unknown key '" + std::string(key) + "'");
    if (!seen.insert(it->key).second) throw ConfigError(where + "duplicate key '" + std::string(key) + "'");
    try {
      it->set(config, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + std::string(key) + ": " + e.what());
    }
  }
  config.validate();
  return config;
}

ExperimentConfig load_config(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ExperimentConfig& config) {
  std::string out;
  for (const auto& f : fields()) out += fmt::format("{} = {}\n", f.key, f.get(config));
  return out;
}

std::vector<RelayState> validation_grid(const RadioParams& params) {
  const double L = params.separation_m;
  const double offsets[5] = {0.0, 5.0, 0.0, 5.0, 0.0};
  const double splits[5] = {0.1, 0.3, 0.5, 0.7, 0.9};
  std::vector<RelayState> grid;
  for (int i = 0; i < 5; ++i) {
    for (double rho : splits) {
      grid.push_back({{L * (i + 1) / 6.0, offsets[i]}, rho * params.p_max_w, (1.0 - rho) * params.p_max_w});
    }
  }
  return grid;
}

// ---------------------------------------------------------------------------
// Commands

namespace {

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, std::string_view header) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot write " + path.string());
    out_ << header << '\n';
  }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
    out_ << '\n';
  }

  ~CsvWriter() = default;

 private:
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(const std::string& v) { return v; }

  fs::path path_;
  std::ofstream out_;
};

fs::path prepare_output(const ExperimentConfig& config) {
  fs::path dir(config.output_dir);
  fs::create_directories(dir);
  return dir;
}

void write_trajectory(const fs::path& path, const Trajectory& t) {
  CsvWriter csv(path, "slot,x_m,y_m,p_source_w,p_relay_w,p_out");
  csv.row(0, t.initial.pos.x_m, t.initial.pos.y_m, t.initial.p_source_w, t.initial.p_relay_w, t.initial_outage);
  for (const auto& s : t.slots) {
    csv.row(s.slot, s.state.pos.x_m, s.state.pos.y_m, s.state.p_source_w, s.state.p_relay_w, s.p_out);
  }
}

}  // namespace

std::vector<fs::path> cmd_optimize(const ExperimentConfig& config, Scheme scheme) {
  const fs::path dir = prepare_output(config);
  const RadioParams params = config.radio();
  const RelayState start = midpoint_start(params);

  const Trajectory baseline = run_scheme(Scheme::Flfp, params, start, config.sdm);
  const Trajectory traj = scheme == Scheme::Flfp ? baseline : run_scheme(scheme, params, start, config.sdm);

  const std::string name(to_string(scheme));
  const fs::path csv_path = dir / ("trajectory_" + name + ".csv");
  write_trajectory(csv_path, traj);

  const fs::path summary_path = dir / ("summary_" + name + ".txt");
  std::ofstream summary(summary_path, std::ios::binary);
  if (!summary) throw std::runtime_error("cannot write " + summary_path.string());
  summary << "scheme = " << name << '\n'
          << "final_outage = " << format_double(traj.final_outage) << '\n'
          << "theta = " << traj.theta << '\n'
          << "improvement_vs_flfp_pct = " << format_double(improvement_pct(baseline, traj)) << '\n';
  return {csv_path, summary_path};
}

std::vector<fs::path> cmd_sweep(const ExperimentConfig& config, SweepVariable variable) {
  const fs::path dir = prepare_output(config);
  const RadioParams params = config.radio();

  if (variable == SweepVariable::RelayPower) {
    const Trajectory olop = run_scheme(Scheme::Olop, params, midpoint_start(params), config.sdm);
    const fs::path path = dir / "sweep_power.csv";
    CsvWriter csv(path, "p_relay_w,p_out");
    for (const auto& pt : power_sweep(params, olop.slots.back().state.pos, config.sweep_points)) {
      csv.row(pt.p_relay_w, pt.p_out);
    }
    return {path};
  }

  const auto minima = min_outage_vs_separation(params, config.grid, config.separations);
  const fs::path path = dir / "sweep_separation.csv";
  CsvWriter csv(path, "L_m,p_out_min,p_out_olop");
  for (const auto& m : minima) {
    RadioParams p = params;
    p.separation_m = m.separation_m;
    const Trajectory olop = run_scheme(Scheme::Olop, p, midpoint_start(p), config.sdm);
    csv.row(m.separation_m, m.p_out_min, olop.final_outage);
  }
  return {path};
}

std::vector<fs::path> cmd_brute_force(const ExperimentConfig& config) {
  const fs::path dir = prepare_output(config);
  const RadioParams params = config.radio();
  const GridMinimum best = brute_force_min(params, config.grid);
  const Trajectory olop = run_scheme(Scheme::Olop, params, midpoint_start(params), config.sdm);

  const fs::path path = dir / "brute_force.csv";
  CsvWriter csv(path, "x_m,y_m,p_source_w,p_relay_w,p_out_min,p_out_olop,gap_pct");
  csv.row(best.state.pos.x_m, best.state.pos.y_m, best.state.p_source_w, best.state.p_relay_w, best.p_out,
          olop.final_outage, 100.0 * (olop.final_outage - best.p_out) / best.p_out);
  return {path};
}

std::vector<fs::path> cmd_select(const ExperimentConfig& config) {
  if (config.n_relays < 2) throw ConfigError("invalid config: select needs n_relays >= 2");
  if (!config.counters.empty() && static_cast<int>(config.counters.size()) != config.n_relays) {
    throw ConfigError("invalid config: counters must list one value per relay");
  }
  const fs::path dir = prepare_output(config);
  const RadioParams params = config.radio();

  auto relays = deploy_relays(config.n_relays, params.separation_m, config.seed);

  const fs::path deployment_path = dir / "deployment.csv";
  {
    CsvWriter csv(deployment_path, "id,x_m,y_m");
    for (const auto& r : relays) csv.row(r.id, r.pos.x_m, r.pos.y_m);
  }

  const fs::path convergence_path = dir / "convergence.csv";
  {
    CsvWriter csv(convergence_path, "id,slot,p_out");
    for (std::size_t i = 0; i < relays.size(); ++i) {
      auto& r = relays[i];
      if (!config.counters.empty()) {
        r.theta_initial = config.counters[i];
      } else {
        const Trajectory t = convergence_trajectory(r, config.selection_scheme, params, config.sdm);
        r.theta_initial = t.theta;
        csv.row(r.id, 0, t.initial_outage);
        for (const auto& s : t.slots) csv.row(r.id, s.slot, s.p_out);
      }
      r.theta = r.theta_initial;
    }
  }

  const auto result = run_phases(relays, config.n_phases, config.cts_delay, config.tick_budget);

  const fs::path phases_path = dir / "phases.csv";
  {
    std::string header = "phase,selected_id";
    for (const auto& r : relays) header += ",counter_" + std::to_string(r.id);
    CsvWriter csv(phases_path, header);
    for (const auto& ph : result.phases) {
      std::string line = std::to_string(ph.phase_index) + "," + std::to_string(ph.transmitter());
      for (const auto& [id, c] : ph.counters_before) line += "," + std::to_string(c);
      csv.row(line);
    }
  }

  const fs::path fairness_path = dir / "fairness.csv";
  {
    CsvWriter csv(fairness_path, "id,times_selected,jain_index");
    for (const auto& [id, n] : result.fairness.times_selected) csv.row(id, n, result.fairness.jain_index);
  }
  return {deployment_path, convergence_path, phases_path, fairness_path};
}

std::vector<fs::path> cmd_montecarlo(const ExperimentConfig& config) {
  const fs::path dir = prepare_output(config);
  const RadioParams params = config.radio();

  const fs::path path = dir / "montecarlo.csv";
  CsvWriter csv(path,
                "scenario,x_m,y_m,rho,snr_threshold,psi,p_exact,p_approx,approx_flag,p_mc,mc_stderr,"
                "p_mc_variable_gain,mc_variable_gain_stderr");

  auto emit = [&](int scenario, const RelayState& s, const RadioParams& p) {
    const auto exact = outage_exact(s, p.separation_m, p);
    const auto approx = outage_approx(s, p.separation_m, p);
    const std::uint64_t seed = config.seed * 1000003ULL + static_cast<std::uint64_t>(scenario);
    const auto mc = outage_monte_carlo(s, p.separation_m, p, config.mc_samples, seed, RelayGain::Fixed);
    const auto mcv = outage_monte_carlo(s, p.separation_m, p, config.mc_samples, seed, RelayGain::Variable);
    const int flag = approx.psi_beyond_validity || approx.outside_unit_interval ? 1 : 0;
    csv.row(scenario, s.pos.x_m, s.pos.y_m, s.p_source_w / p.p_max_w, p.snr_threshold, exact.psi, exact.p_out,
            approx.p_out, flag, mc.p_out, *mc.mc_stderr, mcv.p_out, *mcv.mc_stderr);
  };

  const auto grid = validation_grid(params);
  int scenario = 0;
  for (const auto& s : grid) emit(++scenario, s, params);

  // Zero threshold: no realization is ever in outage.
  RadioParams zero = params;
  zero.snr_threshold = 0.0;
  emit(++scenario, midpoint_start(params), zero);
  return {path};
}

}  // namespace fogrelay
