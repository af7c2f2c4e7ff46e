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

#ifndef ADAPTRADE_CONFIG_HPP_
#define ADAPTRADE_CONFIG_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace adaptrade {

enum class Mode { adaptive, quenched_network, quenched_wealth };

/// Graph used to seed an adaptive run, or held fixed in quenched_network mode.
enum class Topology { empty, erdos_renyi, regular, scale_free, complete };

std::string_view to_string(Mode mode);
std::string_view to_string(Topology topology);
/// Accepts the snake_case names and the CLI spellings (quenched-net, ...).
Mode parse_mode(std::string_view text);
Topology parse_topology(std::string_view text);

/// All parameters of one run. Physical-unit couplings are converted to
/// per-sweep values through j0() and sigma0().
struct SimConfig {
  std::size_t n_agents = 1000;
  double j_phys = 0.005;
  double sigma_phys = 1.0;
  double epsilon = 0.001;
  double a_add = 0.002;
  double r_remove = 0.1;
  double w_min = 0.01;
  Mode mode = Mode::adaptive;
  std::size_t wealth_sweeps_per_geometry_sweep = 100;
  std::size_t total_geometry_sweeps = 1000;
  std::size_t burn_in_geometry_sweeps = 100;
  std::size_t record_every = 1;
  std::uint64_t seed = 1;

  // Initial graph (adaptive) or frozen graph (quenched_network).
  Topology topology = Topology::erdos_renyi;
  double mean_degree = 4.0;
  double topology_mu = 1.5;

  // Pareto tail index of the frozen weights in quenched_wealth mode.
  double weight_mu = 1.5;

  // Steady-state histograms and the tail-fit windows applied to them.
  // Degree windows are in units of q / <q>.
  std::size_t wealth_bins_per_decade = 10;
  double wealth_hist_lo = 1e-6;
  double wealth_hist_hi = 1e4;
  double wealth_fit_lo = 1.0;
  double wealth_fit_hi = 100.0;
  std::size_t degree_bins_per_decade = 5;
  double degree_hist_lo = 1e-2;
  double degree_hist_hi = 1e3;
  double degree_fit_lo = 2.0;
  double degree_fit_hi = 30.0;

  double beta() const { return a_add / r_remove; }
  double j0() const { return epsilon * j_phys; }
  double sigma0() const;

  bool operator==(const SimConfig&) const = default;
};

struct ConfigViolation {
  std::vector<std::string_view> keys;  // config keys involved
  std::string message;
};

/// Every invariant the config breaks, in a fixed order. Empty when valid.
std::vector<ConfigViolation> violations(const SimConfig& config);

/// Throws std::invalid_argument describing the first violation.
void validate(const SimConfig& config);

}  // namespace adaptrade

#endif  // ADAPTRADE_CONFIG_HPP_
