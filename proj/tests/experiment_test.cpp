#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "udn/error.hpp"
#include "udn/experiment.hpp"

namespace udn {
namespace {

TEST(ParseConfig, EmptyIsReferenceDeployment) {
  const auto cfg = parse_config({});
  const NetworkConfig net = cfg.network();
  const NetworkConfig ref;
  EXPECT_DOUBLE_EQ(net.rap_density, ref.rap_density);
  EXPECT_DOUBLE_EQ(net.user_density, ref.user_density);
  EXPECT_DOUBLE_EQ(net.cell_radius, ref.cell_radius);
  EXPECT_DOUBLE_EQ(net.min_separation, ref.min_separation);
  EXPECT_DOUBLE_EQ(net.bandwidth, ref.bandwidth);
  EXPECT_DOUBLE_EQ(net.path_loss.exponent(), 3.6);
  EXPECT_NEAR(std::log10(net.noise_over_power()), -12.8, 1e-12);
}

TEST(ParseConfig, ConvertsUnits) {
  const auto cfg = parse_config({{"lambda_r_per_km2", "80"}, {"C_km", "0.25"},
                                 {"bandwidth_MHz", "20"}, {"window_km", "4"}});
  const auto net = cfg.network();
  EXPECT_DOUBLE_EQ(net.rap_density, 80e-6);
  EXPECT_DOUBLE_EQ(net.cell_radius, 250.0);
  EXPECT_DOUBLE_EQ(net.bandwidth, 20e6);
  EXPECT_DOUBLE_EQ(net.window.width(), 4000.0);
}

TEST(ParseConfig, RejectsDivergentPathLoss) {
  try {
    parse_config({{"alpha", "2"}});
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("diverge"), std::string::npos);
  }
}

TEST(ParseConfig, RejectsBadInput) {
  EXPECT_THROW(parse_config({{"lamda_r", "50"}}), ConfigError);
  EXPECT_THROW(parse_config({{"C_km", "abc"}}), ConfigError);
  EXPECT_THROW(parse_config({{"grid_km", "0.2,0.1"}}), ConfigError);
  EXPECT_THROW(parse_config({{"scheme", "zf"}}), ConfigError);
  EXPECT_THROW(parse_config({{"preset", "fig9"}}), ConfigError);
  EXPECT_THROW(parse_config({{"lambda_u_per_km2", "-1"}}), ConfigError);
}

TEST(ParseConfig, PresetAppliesBeforeOverrides) {
  const auto cfg = parse_config({{"drops", "7"}, {"preset", "fig4"}});
  EXPECT_EQ(cfg.sweep, SweepVariable::Separation);
  EXPECT_EQ(cfg.drops, 7U);
  ASSERT_TRUE(cfg.cell_ratio);
  EXPECT_DOUBLE_EQ(*cfg.cell_ratio, 0.5);
  EXPECT_EQ(cfg.grid_km.size(), 10U);
}

TEST(ParseSettings, TextAndCsvHeader) {
  const auto s = parse_settings_text("# comment\n\nC_km = 0.3\nseed=9\n");
  ASSERT_EQ(s.size(), 2U);
  EXPECT_EQ(s[0], (Setting{"C_km", "0.3"}));
  EXPECT_THROW(parse_settings_text("C_km 0.3\n"), ConfigError);
  const auto h = parse_settings_header("# title\n# seed=4\nC_km,tau\n# seed=5\n");
  ASSERT_EQ(h.size(), 1U);
  EXPECT_EQ(h[0], (Setting{"seed", "4"}));
}

TEST(Csv, HeaderReproducesTheConfig) {
  const auto cfg = parse_config({{"preset", "fig2"},
                                 {"lambda_r_per_km2", "0.1"},
                                 {"rtol", "3e-7"},
                                 {"split_d_km", "2.5"},
                                 {"scheme", "mrt,ncjt"}});
  CsvTable table{{"C_km", "tau"}, {{"0.05", "1"}}};
  std::ostringstream first;
  write_csv(first, cfg, table);
  const auto replayed = parse_config(parse_settings_header(first.str()));
  std::ostringstream second;
  write_csv(second, replayed, table);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(render_config(cfg), render_config(replayed));
}

TEST(Csv, ShortestRoundTripNumbers) {
  EXPECT_EQ(format_number(0.1), "0.1");
  EXPECT_EQ(format_number(99812345.0), "99812345");
  for (double v : {1.0 / 3.0, 6.30957344480193e-08, 1e300}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(RunExperiment, AnalyticColumnsOnlyForMrt) {
  const auto cfg = parse_config({{"mode", "compare"}, {"scheme", "mrt,nearest"},
                                 {"grid_km", "0.1"}, {"drops", "2"}, {"fadings", "2"},
                                 {"window_km", "2"}});
  const auto t = run_experiment(cfg);
  ASSERT_EQ(t.rows.size(), 2U);
  EXPECT_FALSE(t.rows[0][1].empty());
  EXPECT_TRUE(t.rows[1][1].empty());
  EXPECT_FALSE(t.rows[1][3].empty());
  EXPECT_EQ(t.rows[1].back(), "nearest");
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(UDNSIM_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  const auto out = std::filesystem::temp_directory_path() / "udnsim_cli_test.csv";
  EXPECT_EQ(run_cli("--mode analytic --grid 0.05 --out " + out.string()), 0);
  EXPECT_EQ(run_cli("--replay " + out.string() + " --out " + out.string()), 0);
  EXPECT_EQ(run_cli("--set alpha=2"), 2);
  EXPECT_EQ(run_cli("--set bogus=1"), 2);
  EXPECT_EQ(run_cli("--no-such-flag"), 2);
  EXPECT_EQ(run_cli("--mode analytic --grid 0.2 --rtol 1e-12 --set max_subdivisions=1"), 3);
  std::filesystem::remove(out);
}

}  // namespace
}  // namespace udn
