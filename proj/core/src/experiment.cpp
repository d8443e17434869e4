#include "udn/experiment.hpp"

#include <charconv>
#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "udn/error.hpp"
#include "udn/geometry.hpp"

namespace udn {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError("'" + std::string(key) + "': expected a number, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::uint64_t parse_unsigned(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw ConfigError("'" + std::string(key) + "': expected a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return v;
}

std::vector<std::string_view> split_list(std::string_view text) {
  std::vector<std::string_view> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    out.push_back(trim(text.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

std::string join_numbers(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += format_number(values[i]);
  }
  return out;
}

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Analytic:
      return "analytic";
    case Mode::MonteCarlo:
      return "montecarlo";
    case Mode::Compare:
      return "compare";
  }
  return "compare";
}

struct Field {
  std::string_view key;
  std::function<void(ExperimentConfig&, std::string_view)> set;
  std::function<std::string(const ExperimentConfig&)> get;
};

Field number_field(std::string_view key, double ExperimentConfig::*member) {
  return {key, [key, member](ExperimentConfig& c, std::string_view v) { c.*member = parse_double(key, v); },
          [member](const ExperimentConfig& c) { return format_number(c.*member); }};
}

template <class T>
Field count_field(std::string_view key, T ExperimentConfig::*member) {
  return {key,
          [key, member](ExperimentConfig& c, std::string_view v) {
            c.*member = static_cast<T>(parse_unsigned(key, v));
          },
          [member](const ExperimentConfig& c) { return std::to_string(c.*member); }};
}

Field optional_field(std::string_view key, std::optional<double> ExperimentConfig::*member) {
  return {key,
          [key, member](ExperimentConfig& c, std::string_view v) {
            v = trim(v);
            if (v == "auto" || v == "none") {
              c.*member = std::nullopt;
            } else {
              c.*member = parse_double(key, v);
            }
          },
          [member](const ExperimentConfig& c) {
            return (c.*member) ? format_number(*(c.*member)) : std::string("auto");
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = {
      {"preset", [](ExperimentConfig& c, std::string_view v) { c.preset = std::string(trim(v)); },
       [](const ExperimentConfig& c) { return c.preset; }},
      {"mode",
       [](ExperimentConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "analytic") {
           c.mode = Mode::Analytic;
         } else if (v == "montecarlo" || v == "mc") {
           c.mode = Mode::MonteCarlo;
         } else if (v == "compare") {
           c.mode = Mode::Compare;
         } else {
           throw ConfigError("'mode': expected analytic, montecarlo or compare, got '" +
                             std::string(v) + "'");
         }
       },
       [](const ExperimentConfig& c) { return std::string(mode_name(c.mode)); }},
      {"scheme",
       [](ExperimentConfig& c, std::string_view v) {
         c.schemes.clear();
         if (trim(v) == "all") {
           c.schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
           return;
         }
         for (auto name : split_list(v)) {
           try {
             c.schemes.push_back(parse_scheme(name));
           } catch (const InvalidParameter& e) {
             throw ConfigError(std::string("'scheme': ") + e.what());
           }
         }
       },
       [](const ExperimentConfig& c) {
         std::string out;
         for (std::size_t i = 0; i < c.schemes.size(); ++i) {
           if (i) out += ',';
           out += to_string(c.schemes[i]);
         }
         return out;
       }},
      {"sweep",
       [](ExperimentConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "C") {
           c.sweep = SweepVariable::CellRadius;
         } else if (v == "D") {
           c.sweep = SweepVariable::Separation;
         } else {
           throw ConfigError("'sweep': expected C or D, got '" + std::string(v) + "'");
         }
       },
       [](const ExperimentConfig& c) {
         return std::string(c.sweep == SweepVariable::CellRadius ? "C" : "D");
       }},
      {"grid_km",
       [](ExperimentConfig& c, std::string_view v) {
         c.grid_km.clear();
         for (auto item : split_list(v)) c.grid_km.push_back(parse_double("grid_km", item));
       },
       [](const ExperimentConfig& c) { return join_numbers(c.grid_km); }},
      optional_field("cell_ratio", &ExperimentConfig::cell_ratio),
      number_field("lambda_r_per_km2", &ExperimentConfig::lambda_r_per_km2),
      number_field("lambda_u_per_km2", &ExperimentConfig::lambda_u_per_km2),
      number_field("C_km", &ExperimentConfig::cell_radius_km),
      number_field("D_km", &ExperimentConfig::min_separation_km),
      number_field("alpha", &ExperimentConfig::alpha),
      number_field("d0_m", &ExperimentConfig::d0_m),
      number_field("bandwidth_MHz", &ExperimentConfig::bandwidth_mhz),
      number_field("noise_psd_dBm_per_Hz", &ExperimentConfig::noise_psd_dbm_hz),
      number_field("tx_power_dBm", &ExperimentConfig::tx_power_dbm),
      number_field("window_km", &ExperimentConfig::window_km),
      {"metric",
       [](ExperimentConfig& c, std::string_view v) {
         v = trim(v);
         if (v == "toroidal") {
           c.metric = Metric::Toroidal;
         } else if (v == "guard") {
           c.metric = Metric::EuclideanWithGuard;
         } else {
           throw ConfigError("'metric': expected toroidal or guard, got '" + std::string(v) +
                             "'");
         }
       },
       [](const ExperimentConfig& c) {
         return std::string(c.metric == Metric::Toroidal ? "toroidal" : "guard");
       }},
      count_field("seed", &ExperimentConfig::seed),
      count_field("drops", &ExperimentConfig::drops),
      count_field("fadings", &ExperimentConfig::fadings),
      number_field("rtol", &ExperimentConfig::rtol),
      number_field("atol", &ExperimentConfig::atol),
      count_field("max_subdivisions", &ExperimentConfig::max_subdivisions),
      optional_field("split_d_km", &ExperimentConfig::split_d_km),
      count_field("table_grid", &ExperimentConfig::table_grid),
  };
  return table;
}

const Field& field_for(std::string_view key) {
  for (const auto& f : fields()) {
    if (f.key == key) return f;
  }
  std::string known;
  for (const auto& f : fields()) {
    if (!known.empty()) known += ", ";
    known += f.key;
  }
  throw ConfigError("unknown configuration key '" + std::string(key) + "' (known: " + known + ")");
}

std::vector<double> range_km(double first, double step, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    // Round to micrometres so the grid prints as typed (0.3, not 0.30000000000000004).
    out.push_back(std::round((first + step * i) * 1e9) / 1e9);
  }
  return out;
}

std::string optional_number(std::optional<double> v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

NetworkConfig ExperimentConfig::network() const {
  NetworkConfig n;
  try {
    n.rap_density = lambda_r_per_km2 * 1e-6;
    n.user_density = lambda_u_per_km2 * 1e-6;
    n.cell_radius = cell_radius_km * 1e3;
    n.min_separation = min_separation_km * 1e3;
    n.path_loss = PathLossModel(d0_m, alpha);
    n.bandwidth = bandwidth_mhz * 1e6;
    n.noise_psd_dbm_hz = noise_psd_dbm_hz;
    n.tx_power_dbm = tx_power_dbm;
    n.window = Window(window_km * 1e3, window_km * 1e3, metric);
    n.validate();
  } catch (const InvalidParameter& e) {
    throw ConfigError(e.what());
  }
  return n;
}

QuadratureSpec ExperimentConfig::quadrature() const {
  QuadratureSpec q;
  q.rel_tol = rtol;
  q.abs_tol = atol;
  q.max_subdivisions = max_subdivisions;
  return q;
}

MonteCarloSpec ExperimentConfig::monte_carlo() const {
  return {drops, fadings, seed, threads};
}

std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, ptr);
}

std::vector<Setting> preset_settings(std::string_view name) {
  const std::string c_grid = join_numbers(range_km(0.05, 0.05, 6));
  if (name == "none") return {};
  if (name == "fig2") {
    return {{"mode", "compare"}, {"scheme", "mrt"},  {"sweep", "C"},
            {"grid_km", c_grid}, {"drops", "200"},   {"fadings", "20"}};
  }
  if (name == "fig3") {
    return {{"mode", "montecarlo"}, {"scheme", "all"}, {"sweep", "C"},
            {"grid_km", c_grid},    {"drops", "200"},  {"fadings", "20"}};
  }
  if (name == "fig4") {
    return {{"mode", "compare"},
            {"scheme", "mrt"},
            {"sweep", "D"},
            {"grid_km", join_numbers(range_km(0.1, 0.1, 10))},
            {"cell_ratio", "0.5"},
            {"drops", "100"},
            {"fadings", "20"}};
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig2, fig3, fig4)");
}

void validate(const ExperimentConfig& cfg) {
  if (!(cfg.alpha > 2.0)) {
    throw ConfigError("'alpha' must exceed 2 (got " + format_number(cfg.alpha) +
                      "): with alpha <= 2 the aggregate interference from an infinite network "
                      "diverges and the throughput integral is zero");
  }
  if (cfg.lambda_r_per_km2 < 0.0 || cfg.lambda_u_per_km2 < 0.0) {
    throw ConfigError("densities must be non-negative");
  }
  if (cfg.cell_radius_km < 0.0 || cfg.min_separation_km < 0.0) {
    throw ConfigError("C_km and D_km must be non-negative");
  }
  if (!(cfg.d0_m > 0.0)) throw ConfigError("'d0_m' must be positive");
  if (!(cfg.bandwidth_mhz > 0.0)) throw ConfigError("'bandwidth_MHz' must be positive");
  if (!(cfg.window_km > 0.0)) throw ConfigError("'window_km' must be positive");
  if (cfg.schemes.empty()) throw ConfigError("at least one scheme is required");
  if (cfg.grid_km.empty()) throw ConfigError("'grid_km' must not be empty");
  for (std::size_t i = 0; i < cfg.grid_km.size(); ++i) {
    if (cfg.grid_km[i] < 0.0) throw ConfigError("'grid_km' values must be non-negative");
    if (i && !(cfg.grid_km[i] > cfg.grid_km[i - 1])) {
      throw ConfigError("'grid_km' must be strictly increasing");
    }
  }
  if (cfg.cell_ratio && !(*cfg.cell_ratio >= 0.0)) {
    throw ConfigError("'cell_ratio' must be non-negative");
  }
  if (cfg.drops < 1) throw ConfigError("'drops' must be at least 1");
  if (cfg.fadings < 1) throw ConfigError("'fadings' must be at least 1");
  if (!(cfg.rtol > 0.0) || !(cfg.atol > 0.0)) throw ConfigError("'rtol' and 'atol' must be > 0");
  if (cfg.max_subdivisions < 1) throw ConfigError("'max_subdivisions' must be at least 1");
  if (cfg.table_grid < 8) throw ConfigError("'table_grid' must be at least 8");
  if (cfg.split_d_km && !(*cfg.split_d_km > 0.0)) throw ConfigError("'split_d_km' must be > 0");
  (void)cfg.network();
}

ExperimentConfig parse_config(const std::vector<Setting>& settings) {
  ExperimentConfig cfg;
  for (const auto& [key, value] : settings) {
    if (key == "preset") {
      cfg.preset = std::string(trim(value));
    }
  }
  for (const auto& [key, value] : preset_settings(cfg.preset)) field_for(key).set(cfg, value);
  for (const auto& [key, value] : settings) {
    if (key == "preset") continue;
    field_for(key).set(cfg, value);
  }
  validate(cfg);
  return cfg;
}

std::vector<Setting> parse_settings_text(std::string_view text) {
  std::vector<Setting> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value, got '" +
                        std::string(line) + "'");
    }
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<Setting> parse_settings_header(std::string_view csv_text) {
  std::vector<Setting> out;
  while (!csv_text.empty()) {
    const auto nl = csv_text.find('\n');
    std::string_view line = csv_text.substr(0, nl);
    csv_text.remove_prefix(nl == std::string_view::npos ? csv_text.size() : nl + 1);
    if (line.empty() || line.front() != '#') break;  // metadata ends at the column header
    line.remove_prefix(1);
    line = trim(line);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    out.emplace_back(std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))));
  }
  return out;
}

std::vector<Setting> render_config(const ExperimentConfig& cfg) {
  std::vector<Setting> out;
  for (const auto& f : fields()) out.emplace_back(std::string(f.key), f.get(cfg));
  return out;
}

CsvTable run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  const bool sweep_c = cfg.sweep == SweepVariable::CellRadius;
  const bool analytic = cfg.mode != Mode::MonteCarlo;
  const bool monte_carlo = cfg.mode != Mode::Analytic;
  const QuadratureSpec q = cfg.quadrature();
  const MonteCarloSpec mc = cfg.monte_carlo();

  CsvTable table;
  if (sweep_c) {
    table.columns = {"C_km", "tau_analytic", "tau_farfield", "tau_mc", "tau_mc_ci95", "scheme"};
  } else {
    table.columns = {"D_km",   "C_km",        "tau_analytic", "tau_mc",     "tau_mc_ci95",
                     "eta_analytic", "eta_mc", "eta_mc_ci95", "scheme"};
  }

  for (double x : cfg.grid_km) {
    ExperimentConfig point = cfg;
    if (sweep_c) {
      point.cell_radius_km = x;
    } else {
      point.min_separation_km = x;
      if (cfg.cell_ratio) point.cell_radius_km = *cfg.cell_ratio * x;
    }
    const NetworkConfig net = point.network();
    const double sched = net.user_density * scheduling_probability(net.user_density,
                                                                   net.min_separation);
    constexpr double kPerKm2 = 1e6;

    for (Scheme scheme : cfg.schemes) {
      std::string context = std::string(sweep_c ? "C_km=" : "D_km=") + format_number(x) +
                            " scheme=" + std::string(to_string(scheme)) + ": ";
      std::optional<double> tau_a, tau_far;
      std::optional<ThroughputEstimate> tau_mc;
      try {
        if (analytic && scheme == Scheme::Mrt) {
          std::optional<double> split;
          if (cfg.split_d_km) split = *cfg.split_d_km * 1e3;
          AnalyticParams p = AnalyticParams::from_config(net, split);
          tau_a = tau_analytic(p, q, cfg.table_grid);
          if (sweep_c) tau_far = tau_farfield_only(p, q);
        }
        if (monte_carlo) tau_mc = estimate_tau(net, scheme, mc);
      } catch (const NumericalFailure& e) {
        throw NumericalFailure(context + e.what());
      } catch (const InvalidParameter& e) {
        throw ConfigError(context + e.what());
      }

      std::vector<std::string> row;
      if (sweep_c) {
        row = {format_number(x),
               optional_number(tau_a),
               optional_number(tau_far),
               tau_mc ? format_number(tau_mc->mean) : "",
               tau_mc ? format_number(tau_mc->ci95_halfwidth) : "",
               std::string(to_string(scheme))};
      } else {
        auto eta = [&](std::optional<double> tau) {
          return tau ? std::optional<double>(sched * *tau * kPerKm2) : std::nullopt;
        };
        row = {format_number(x),
               format_number(point.cell_radius_km),
               optional_number(tau_a),
               tau_mc ? format_number(tau_mc->mean) : "",
               tau_mc ? format_number(tau_mc->ci95_halfwidth) : "",
               optional_number(eta(tau_a)),
               tau_mc ? format_number(sched * tau_mc->mean * kPerKm2) : "",
               tau_mc ? format_number(sched * tau_mc->ci95_halfwidth * kPerKm2) : "",
               std::string(to_string(scheme))};
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

void write_csv(std::ostream& os, const ExperimentConfig& cfg, const CsvTable& table) {
  os << "# udnsim throughput sweep; throughput in bit/s, spatial throughput in bit/s/km^2\n";
  for (const auto& [key, value] : render_config(cfg)) os << "# " << key << '=' << value << '\n';
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) os << ',';
      os << cells[i];
    }
    os << '\n';
  };
  line(table.columns);
  for (const auto& row : table.rows) line(row);
}

}  // namespace udn
