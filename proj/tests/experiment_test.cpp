#include "fogrelay/experiment.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fogrelay/errors.hpp"

namespace fogrelay {
namespace {

namespace fs = std::filesystem;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const fs::path& p) {
  std::vector<std::string> out;
  std::istringstream in(slurp(p));
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  for (std::string c; std::getline(in, c, ',');) out.push_back(c);
  return out;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("fogrelay_" + name);
  fs::remove_all(dir);
  return dir;
}

ExperimentConfig small_config(const std::string& name) {
  ExperimentConfig c = parse_config(
      "time_slots = 40\n"
      "n_power = 21\n"
      "n_positions = 120\n"
      "sweep_points = 11\n"
      "mc_samples = 2000\n"
      "n_phases = 12\n");
  c.output_dir = scratch(name).string();
  return c;
}

TEST(Config, EmptyGivesDefaults) {
  const auto c = parse_config("");
  EXPECT_EQ(c, ExperimentConfig{});
  EXPECT_EQ(c.sdm.max_iters, 1500);
  EXPECT_EQ(c.separation_m, 50.0);
  EXPECT_EQ(c.p_max_dbm, 26.0);
  EXPECT_EQ(c.snr_threshold_db, 0.0);
  EXPECT_EQ(c.alpha, 4.0);
  EXPECT_EQ(c.noise_dbm, -96.0);
  EXPECT_EQ(c.sdm.mobility_limit_m, 0.01);
  EXPECT_EQ(c.radio(), RadioParams::defaults());
}

TEST(Config, ParsesValuesAndComments) {
  const auto c = parse_config(
      "# header\n"
      "  alpha = 3.5   # inline\n"
      "\n"
      "schemes = olfp, olop\n"
      "line_search = exact\n"
      "counters = 36,11,7,63\n"
      "separations = 20, 40\n"
      "seed = 18446744073709551615\n"
      "output_dir = results/a b\n");
  EXPECT_EQ(c.alpha, 3.5);
  EXPECT_EQ(c.schemes, (std::vector<Scheme>{Scheme::Olfp, Scheme::Olop}));
  EXPECT_EQ(c.sdm.line_search, opt::LineSearch::ExactLineSearch);
  EXPECT_EQ(c.counters, (std::vector<int>{36, 11, 7, 63}));
  EXPECT_EQ(c.separations, (std::vector<double>{20.0, 40.0}));
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.output_dir, "results/a b");
}

void expect_config_error(const std::string& text, const std::string& fragment) {
  try {
    parse_config(text);
    FAIL() << "accepted: " << text;
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(Config, Errors) {
  expect_config_error("alpha = 1\n", "path_loss_exp");
  expect_config_error("\n\ncolour = red\n", "line 3");
  expect_config_error("seed = 1\nseed = 2\n", "duplicate");
  expect_config_error("alpha\n", "line 1");
  expect_config_error("alpha = four\n", "alpha");
  expect_config_error("time_slots = 2.5\n", "time_slots");
  expect_config_error("schemes = olfp,abc\n", "abc");
  expect_config_error("separations = 40, 30\n", "ascending");
  expect_config_error("mc_samples = 10\n", "mc_samples");
  expect_config_error("line_search = wolfe\n", "line_search");
  expect_config_error("alpha = nan\n", "finite");
  expect_config_error("counters = 3,-1\n", "counters");
}

TEST(Config, RoundTrip) {
  ExperimentConfig c;
  c.alpha = 3.3;
  c.noise_dbm = -90.123456789012345;
  c.schemes = {Scheme::Opfl};
  c.counters = {4, 5};
  c.n_relays = 2;
  c.sdm.line_search = opt::LineSearch::ExactLineSearch;
  c.separations = {0.1, 1.0 / 3.0};
  c.seed = 42;
  EXPECT_EQ(parse_config(serialize_config(c)), c);
  EXPECT_EQ(parse_config(serialize_config(ExperimentConfig{})), ExperimentConfig{});
}

TEST(Config, LoadFromFile) {
  const fs::path dir = scratch("load");
  fs::create_directories(dir);
  std::ofstream(dir / "a.cfg") << "seed = 42\n";
  EXPECT_EQ(load_config(dir / "a.cfg").seed, 42u);
  EXPECT_THROW(load_config(dir / "missing.cfg"), ConfigError);
}

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1");
  EXPECT_EQ(std::stod(format_double(1.0 / 3.0)), 1.0 / 3.0);
}

TEST(ValidationGrid, Shape) {
  const auto p = RadioParams::defaults();
  const auto g = validation_grid(p);
  ASSERT_EQ(g.size(), 25u);
  EXPECT_NEAR(g[0].pos.x_m, 50.0 / 6, 1e-12);
  EXPECT_EQ(g[5].pos.y_m, 5.0);
  for (const auto& s : g) EXPECT_NEAR(s.p_source_w + s.p_relay_w, p.p_max_w, 1e-15);
}

TEST(CmdOptimize, FilesAndShape) {
  const auto c = small_config("opt");
  const auto flfp = cmd_optimize(c, Scheme::Flfp);
  const auto rows = lines(flfp[0]);
  EXPECT_EQ(rows[0], "slot,x_m,y_m,p_source_w,p_relay_w,p_out");
  ASSERT_EQ(rows.size(), 42u);
  for (std::size_t i = 2; i < rows.size(); ++i) EXPECT_EQ(split(rows[i])[5], split(rows[1])[5]);

  const auto olop = cmd_optimize(c, Scheme::Olop);
  const auto orows = lines(olop[0]);
  EXPECT_LE(orows.size(), 42u);
  EXPECT_LE(std::stod(split(orows.back())[5]), std::stod(split(orows[1])[5]));
  const auto summary = slurp(olop[1]);
  EXPECT_NE(summary.find("scheme = olop"), std::string::npos);
  EXPECT_NE(summary.find("improvement_vs_flfp_pct = "), std::string::npos);
}

TEST(CmdSweep, PowerAndSeparation) {
  auto c = small_config("sweep");
  const auto power = lines(cmd_sweep(c, SweepVariable::RelayPower)[0]);
  EXPECT_EQ(power[0], "p_relay_w,p_out");
  ASSERT_EQ(power.size(), 12u);
  EXPECT_EQ(split(power[1])[1], "1");
  EXPECT_EQ(split(power.back())[1], "1");

  const auto sep = lines(cmd_sweep(c, SweepVariable::Separation)[0]);
  EXPECT_EQ(sep[0], "L_m,p_out_min,p_out_olop");
  ASSERT_EQ(sep.size(), 7u);
  for (std::size_t i = 2; i < sep.size(); ++i) EXPECT_GE(std::stod(split(sep[i])[1]), std::stod(split(sep[i - 1])[1]));

  c.sweep_points = 1;
  EXPECT_EQ(lines(cmd_sweep(c, SweepVariable::RelayPower)[0]).size(), 2u);
}

TEST(CmdBruteForce, Header) {
  const auto rows = lines(cmd_brute_force(small_config("bf"))[0]);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], "x_m,y_m,p_source_w,p_relay_w,p_out_min,p_out_olop,gap_pct");
}

TEST(CmdSelect, OverrideModeWorkedExample) {
  auto c = small_config("select_override");
  c.counters = {36, 11, 7, 63};
  const auto files = cmd_select(c);
  ASSERT_EQ(files.size(), 4u);
  EXPECT_EQ(lines(files[1]), (std::vector<std::string>{"id,slot,p_out"}));
  const auto phases = lines(files[2]);
  EXPECT_EQ(phases[0], "phase,selected_id,counter_1,counter_2,counter_3,counter_4");
  EXPECT_EQ(phases[1], "1,3,36,11,7,63");
  EXPECT_EQ(phases[2], "2,2,31,6,7,58");
  EXPECT_EQ(lines(files[3])[0], "id,times_selected,jain_index");
}

TEST(CmdSelect, ComputedCounters) {
  const auto files = cmd_select(small_config("select"));
  EXPECT_EQ(lines(files[0]).size(), 5u);
  EXPECT_GT(lines(files[1]).size(), 5u);
  EXPECT_EQ(lines(files[2]).size(), 13u);
}

TEST(CmdSelect, Rejects) {
  auto c = small_config("select_bad");
  c.n_relays = 1;
  EXPECT_THROW(cmd_select(c), ConfigError);
  c.n_relays = 3;
  c.counters = {1, 2};
  EXPECT_THROW(cmd_select(c), ConfigError);
}

TEST(CmdMonteCarlo, RowsAndZeroThreshold) {
  const auto rows = lines(cmd_montecarlo(small_config("mc"))[0]);
  ASSERT_EQ(rows.size(), 27u);
  EXPECT_EQ(split(rows[0]).size(), 13u);
  const auto zero = split(rows.back());
  EXPECT_EQ(zero[6], "0");
  EXPECT_EQ(zero[7], "0");
  EXPECT_EQ(zero[9], "0");
  EXPECT_EQ(zero[11], "0");
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const auto cells = split(rows[i]);
    for (int col : {6, 9, 11}) {
      EXPECT_GE(std::stod(cells[col]), 0.0);
      EXPECT_LE(std::stod(cells[col]), 1.0);
    }
  }
}

TEST(Commands, ByteIdenticalReruns) {
  auto a = small_config("det_a");
  auto b = small_config("det_b");
  auto run_all = [](const ExperimentConfig& c) {
    std::vector<fs::path> files;
    for (Scheme s : kAllSchemes) {
      auto f = cmd_optimize(c, s);
      files.insert(files.end(), f.begin(), f.end());
    }
    for (auto f : {cmd_sweep(c, SweepVariable::RelayPower), cmd_brute_force(c), cmd_select(c), cmd_montecarlo(c)}) {
      files.insert(files.end(), f.begin(), f.end());
    }
    return files;
  };
  const auto fa = run_all(a);
  const auto fb = run_all(b);
  ASSERT_EQ(fa.size(), fb.size());
  for (std::size_t i = 0; i < fa.size(); ++i) {
    EXPECT_EQ(fa[i].filename(), fb[i].filename());
    EXPECT_EQ(slurp(fa[i]), slurp(fb[i])) << fa[i];
  }
}

TEST(Commands, SeedChangesRandomOutputs) {
  auto a = small_config("seed_a");
  auto b = small_config("seed_b");
  b.seed = 2;
  EXPECT_NE(slurp(cmd_select(a)[0]), slurp(cmd_select(b)[0]));
}

}  // namespace
}  // namespace fogrelay
