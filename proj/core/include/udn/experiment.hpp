#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "udn/analytic.hpp"
#include "udn/config.hpp"
#include "udn/quadrature.hpp"
#include "udn/schemes.hpp"
#include "udn/simulator.hpp"

namespace udn {

enum class Mode { Analytic, MonteCarlo, Compare };
enum class SweepVariable { CellRadius, Separation };

/// A sweep request in the units people type: km, km^-2, dBm, MHz. Values are
/// kept exactly as parsed so a rendered config reproduces the run bit for bit;
/// `network()` performs the single conversion to SI.
struct ExperimentConfig {
  double lambda_r_per_km2 = 50.0;
  double lambda_u_per_km2 = 20.0;
  double cell_radius_km = 0.2;
  double min_separation_km = 0.4;
  double alpha = 3.6;
  double d0_m = 10.0;
  double bandwidth_mhz = 10.0;
  double noise_psd_dbm_hz = -174.0;
  double tx_power_dbm = 24.0;
  double window_km = 10.0;
  Metric metric = Metric::Toroidal;

  Mode mode = Mode::Compare;
  std::vector<Scheme> schemes{Scheme::Mrt};
  SweepVariable sweep = SweepVariable::CellRadius;
  std::vector<double> grid_km{0.2};
  /// With a D sweep, C = cell_ratio * D at every grid point.
  std::optional<double> cell_ratio;

  std::uint64_t seed = 1;
  std::size_t drops = 200;
  std::size_t fadings = 20;
  double rtol = QuadratureSpec{}.rel_tol;
  double atol = QuadratureSpec{}.abs_tol;
  std::size_t max_subdivisions = QuadratureSpec{}.max_subdivisions;
  std::optional<double> split_d_km;
  std::size_t table_grid = kDefaultTableGrid;
  std::string preset = "none";

  /// Not part of the run identity; never rendered.
  unsigned threads = 0;

  [[nodiscard]] NetworkConfig network() const;
  [[nodiscard]] QuadratureSpec quadrature() const;
  [[nodiscard]] MonteCarloSpec monte_carlo() const;
};

using Setting = std::pair<std::string, std::string>;

/// Starts from the reference deployment, applies `preset` (if any) first and
/// then every other setting in order. Throws ConfigError on unknown keys,
/// malformed values and non-physical parameters.
ExperimentConfig parse_config(const std::vector<Setting>& settings);

/// `key = value` lines; blank lines and `#` comments are skipped.
std::vector<Setting> parse_settings_text(std::string_view text);

/// Settings embedded in the `# key=value` metadata lines of an emitted CSV.
std::vector<Setting> parse_settings_header(std::string_view csv_text);

/// Canonical `key=value` lines for every run-defining field.
std::vector<Setting> render_config(const ExperimentConfig& cfg);

/// Preset sweeps: fig2 (C sweep, both engines), fig3 (C sweep, all schemes,
/// Monte Carlo), fig4 (D sweep with C = D/2, both engines).
std::vector<Setting> preset_settings(std::string_view name);

/// Throws ConfigError if the config violates an invariant.
void validate(const ExperimentConfig& cfg);

struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// One row per (grid point, scheme) in grid order. Throughput in bit/s,
/// spatial throughput in bit/s/km^2; cells without a value are left empty.
CsvTable run_experiment(const ExperimentConfig& cfg);

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const CsvTable& table);

/// Shortest decimal form that parses back to the same double.
std::string format_number(double v);

}  // namespace udn
