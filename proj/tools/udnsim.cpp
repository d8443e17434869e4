// udnsim: throughput sweeps for user-centric joint transmission.
//
//   udnsim --preset fig2 --out fig2.csv
//   udnsim --mode analytic --sweep C --grid 0.05,0.1,0.2 C_km=0.2 lambda_r_per_km2=80
//   udnsim --replay fig2.csv            # re-run from an emitted header
//
// Exit codes: 0 success, 2 configuration error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "udn/error.hpp"
#include "udn/experiment.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalFailure = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw udn::ConfigError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

udn::Setting split_assignment(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos) {
    throw udn::ConfigError("expected key=value, got '" + text + "'");
  }
  return {text.substr(0, eq), text.substr(eq + 1)};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Throughput of user-centric MRT joint transmission: analytic and Monte Carlo"};

  std::string config_file, replay_file, out_path;
  std::string preset, mode, scheme, sweep, grid, seed, drops, fadings, rtol, atol, split_d;
  unsigned threads = 0;
  std::vector<std::string> assignments;

  app.add_option("--config", config_file, "key=value configuration file");
  app.add_option("--replay", replay_file, "re-run the configuration embedded in a CSV header");
  app.add_option("--preset", preset, "fig2 | fig3 | fig4");
  app.add_option("--mode", mode, "analytic | montecarlo | compare");
  app.add_option("--scheme", scheme, "mrt | ncjt | maxsnr | nearest | all (comma list)");
  app.add_option("--sweep", sweep, "C | D");
  app.add_option("--grid", grid, "comma-separated sweep values in km");
  app.add_option("--seed", seed, "root random seed");
  app.add_option("--drops", drops, "geometric realisations per grid point");
  app.add_option("--fadings", fadings, "fading realisations per drop");
  app.add_option("--rtol", rtol, "quadrature relative tolerance");
  app.add_option("--atol", atol, "quadrature absolute tolerance");
  app.add_option("--split-d", split_d, "near/far split distance in km (default max(5D, 10C))");
  app.add_option("--threads", threads, "worker threads (0 = all cores)");
  app.add_option("--out", out_path, "CSV output path (default stdout)");
  app.add_option("--set,settings", assignments, "extra key=value settings, e.g. C_km=0.25");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    std::vector<udn::Setting> settings;
    if (!config_file.empty()) {
      auto from_file = udn::parse_settings_text(read_file(config_file));
      settings.insert(settings.end(), from_file.begin(), from_file.end());
    }
    if (!replay_file.empty()) {
      auto from_csv = udn::parse_settings_header(read_file(replay_file));
      if (from_csv.empty()) throw udn::ConfigError("'" + replay_file + "' has no config header");
      settings.insert(settings.end(), from_csv.begin(), from_csv.end());
    }
    auto flag = [&settings](const char* key, const std::string& value) {
      if (!value.empty()) settings.emplace_back(key, value);
    };
    flag("preset", preset);
    flag("mode", mode);
    flag("scheme", scheme);
    flag("sweep", sweep);
    flag("grid_km", grid);
    flag("seed", seed);
    flag("drops", drops);
    flag("fadings", fadings);
    flag("rtol", rtol);
    flag("atol", atol);
    flag("split_d_km", split_d);
    for (const auto& a : assignments) settings.push_back(split_assignment(a));

    udn::ExperimentConfig cfg = udn::parse_config(settings);
    cfg.threads = threads;
    const udn::CsvTable table = udn::run_experiment(cfg);

    if (out_path.empty()) {
      udn::write_csv(std::cout, cfg, table);
    } else {
      std::ofstream out(out_path);
      if (!out) throw udn::ConfigError("cannot write '" + out_path + "'");
      udn::write_csv(out, cfg, table);
    }
  } catch (const udn::ConfigError& e) {
    std::cerr << "udnsim: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const udn::InvalidParameter& e) {
    std::cerr << "udnsim: configuration error: " << e.what() << '\n';
    return kConfigError;
  } catch (const udn::NumericalFailure& e) {
    std::cerr << "udnsim: numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
  return EXIT_SUCCESS;
}
