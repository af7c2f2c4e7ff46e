// Copyright 2026 The adaptrade Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end: run, ensemble, scan and fit.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "adaptrade/config.hpp"
#include "adaptrade/dynamics.hpp"
#include "adaptrade/io.hpp"
#include "adaptrade/observables.hpp"

namespace {

using adaptrade::ConfigError;
using adaptrade::SimConfig;

struct SimFlags {
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> overrides;  // config key, value
  std::optional<std::string> beta;
  std::vector<std::string> settings;  // raw key=value
  std::string out_dir = "out";
  std::size_t replicas = 1;
  std::size_t workers = 1;
};

void add_sim_flags(CLI::App* cmd, SimFlags& flags, bool ensemble_flags) {
  cmd->add_option("--config", flags.config_path, "Config file (key = value lines)");
  const std::pair<const char*, const char*> mapping[] = {
      {"--mode", "mode"},
      {"--n", "n_agents"},
      {"--j", "j_phys"},
      {"--sigma", "sigma_phys"},
      {"--epsilon", "epsilon"},
      {"--a", "a_add"},
      {"--r", "r_remove"},
      {"--wmin", "w_min"},
      {"--seed", "seed"},
      {"--sweeps", "total_geometry_sweeps"},
      {"--burn-in", "burn_in_geometry_sweeps"},
      {"--record-every", "record_every"},
      {"--topology", "topology"},
      {"--mean-degree", "mean_degree"},
  };
  for (const auto& [flag, key] : mapping) {
    std::string k = key;
    cmd->add_option_function<std::string>(
        flag, [&flags, k](const std::string& v) { flags.overrides.emplace_back(k, v); },
        "Sets " + k);
  }
  cmd->add_option_function<std::string>(
      "--beta", [&flags](const std::string& v) { flags.beta = v; },
      "Sets a_add = beta * r_remove");
  cmd->add_option("--set", flags.settings, "Any config key, as key=value (repeatable)");
  cmd->add_option("--out", flags.out_dir, "Output directory");
  if (ensemble_flags) {
    cmd->add_option("--replicas", flags.replicas, "Number of replicas")->check(CLI::PositiveNumber);
    cmd->add_option("--workers", flags.workers, "Concurrent replicas")->check(CLI::PositiveNumber);
  }
}

// CLI flags > config file > defaults.
SimConfig resolve_config(const SimFlags& flags) {
  SimConfig config = flags.config_path.empty() ? SimConfig{} : adaptrade::load_config(flags.config_path);
  try {
    for (const auto& [key, value] : flags.overrides) adaptrade::set_config_value(config, key, value);
    for (const auto& s : flags.settings) {
      const auto eq = s.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value, got '" + s + "'");
      adaptrade::set_config_value(config, s.substr(0, eq), s.substr(eq + 1));
    }
    if (flags.beta) {
      bool a_given = false;
      for (const auto& [key, value] : flags.overrides) a_given |= key == "a_add";
      if (a_given) throw std::invalid_argument("--a and --beta are mutually exclusive");
      std::size_t used = 0;
      const double beta = std::stod(*flags.beta, &used);
      if (used != flags.beta->size()) throw std::invalid_argument("malformed value for --beta");
      config.a_add = beta * config.r_remove;
    }
    adaptrade::validate(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(0, e.what());
  }
  return config;
}

void print_summary(const adaptrade::RunOutput& out) {
  const auto s = adaptrade::summarize(out);
  std::cout << "y2_wealth " << adaptrade::format_real(s.y2_wealth) << "\nmean_degree "
            << adaptrade::format_real(s.mean_degree) << '\n'
            << adaptrade::fits_text(out);
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string item = text.substr(start, comma - start);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size())
      throw ConfigError(0, "malformed scan value '" + item + "'");
    values.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive trading-network simulator"};
  app.require_subcommand(1);

  SimFlags run_flags, ensemble_flags, scan_flags;
  auto* run = app.add_subcommand("run", "Run a single simulation");
  add_sim_flags(run, run_flags, false);

  auto* ensemble = app.add_subcommand("ensemble", "Run independent replicas and aggregate");
  add_sim_flags(ensemble, ensemble_flags, true);

  std::string scan_param = "j";
  std::string scan_values;
  auto* scan = app.add_subcommand("scan", "Ensemble per value of j_phys or beta");
  add_sim_flags(scan, scan_flags, true);
  scan->add_option("--param", scan_param, "Scanned parameter: j or beta");
  scan->add_option("--values", scan_values, "Comma-separated grid")->required();

  std::string hist_path;
  double fit_lo = 0, fit_hi = 0;
  auto* fit = app.add_subcommand("fit", "Re-fit a histogram CSV over a new range");
  fit->add_option("--hist", hist_path, "Histogram CSV (bin_lo,bin_hi,count,density)")->required();
  fit->add_option("--lo", fit_lo, "Lower end of the fit window")->required();
  fit->add_option("--hi", fit_hi, "Upper end of the fit window")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*run) {
      const SimConfig config = resolve_config(run_flags);
      const auto out = adaptrade::run_simulation(config);
      adaptrade::write_run_output(out, run_flags.out_dir);
      print_summary(out);
    } else if (*ensemble) {
      const SimConfig config = resolve_config(ensemble_flags);
      const auto result =
          adaptrade::ensemble_run(config, ensemble_flags.replicas, ensemble_flags.workers);
      adaptrade::write_ensemble_output(result, ensemble_flags.out_dir);
      std::cout << adaptrade::ensemble_csv(result.aggregates);
    } else if (*scan) {
      const SimConfig config = resolve_config(scan_flags);
      adaptrade::ScanParameter parameter;
      try {
        parameter = adaptrade::parse_scan_parameter(scan_param);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
      }
      const auto values = parse_values(scan_values);
      for (double v : values) {
        try {
          adaptrade::validate(adaptrade::scan_point_config(config, parameter, v));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(0, "scan value " + adaptrade::format_real(v) + ": " + e.what());
        }
      }
      const auto points =
          adaptrade::run_scan(config, parameter, values, scan_flags.replicas, scan_flags.workers);
      adaptrade::write_scan_output(points, scan_flags.out_dir);
      std::cout << adaptrade::scan_csv(points);
    } else if (*fit) {
      std::ifstream in(hist_path);
      if (!in) throw std::runtime_error("cannot read " + hist_path);
      const auto hist = adaptrade::read_histogram_csv(in);
      const auto result = adaptrade::fit_power_law_tail(hist, fit_lo, fit_hi);
      std::cout << "slope " << adaptrade::format_real(result.slope) << " +- "
                << adaptrade::format_real(result.std_error) << " range "
                << adaptrade::format_real(result.lo) << ' ' << adaptrade::format_real(result.hi)
                << " bins " << result.n_bins_used << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
