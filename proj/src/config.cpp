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

#include "adaptrade/config.hpp"

#include <cmath>
#include <stdexcept>

namespace adaptrade {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::adaptive: return "adaptive";
    case Mode::quenched_network: return "quenched_network";
    case Mode::quenched_wealth: return "quenched_wealth";
  }
  return "?";
}

std::string_view to_string(Topology topology) {
  switch (topology) {
    case Topology::empty: return "empty";
    case Topology::erdos_renyi: return "erdos_renyi";
    case Topology::regular: return "regular";
    case Topology::scale_free: return "scale_free";
    case Topology::complete: return "complete";
  }
  return "?";
}

Mode parse_mode(std::string_view text) {
  if (text == "adaptive") return Mode::adaptive;
  if (text == "quenched_network" || text == "quenched-net" ||
      text == "quenched-network")
    return Mode::quenched_network;
  if (text == "quenched_wealth" || text == "quenched-wealth")
    return Mode::quenched_wealth;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "'");
}

Topology parse_topology(std::string_view text) {
  if (text == "empty") return Topology::empty;
  if (text == "erdos_renyi" || text == "erdos-renyi" || text == "er")
    return Topology::erdos_renyi;
  if (text == "regular") return Topology::regular;
  if (text == "scale_free" || text == "scale-free") return Topology::scale_free;
  if (text == "complete") return Topology::complete;
  throw std::invalid_argument("unknown topology '" + std::string(text) + "'");
}

double SimConfig::sigma0() const { return std::sqrt(epsilon) * sigma_phys; }

std::vector<ConfigViolation> violations(const SimConfig& c) {
  std::vector<ConfigViolation> out;
  auto check = [&out](bool ok, std::vector<std::string_view> keys,
                      std::string message) {
    if (!ok) out.push_back({std::move(keys), std::move(message)});
  };
  auto finite = [](double x) { return std::isfinite(x); };

  check(c.n_agents >= 2, {"n_agents"}, "n_agents must be at least 2");
  check(finite(c.j_phys) && c.j_phys >= 0, {"j_phys"}, "j_phys must be >= 0");
  check(finite(c.sigma_phys) && c.sigma_phys > 0, {"sigma_phys"},
        "sigma_phys must be > 0");
  check(finite(c.epsilon) && c.epsilon > 0, {"epsilon"}, "epsilon must be > 0");
  check(!(c.epsilon * c.j_phys >= 1), {"epsilon", "j_phys"},
        "epsilon * j_phys must be < 1");
  check(finite(c.a_add) && c.a_add >= 0, {"a_add"}, "a_add must be >= 0");
  check(finite(c.r_remove) && c.r_remove > 0 && c.r_remove <= 1, {"r_remove"},
        "r_remove must lie in (0, 1]");
  check(finite(c.w_min) && c.w_min >= 0, {"w_min"}, "w_min must be >= 0");
  check(c.wealth_sweeps_per_geometry_sweep >= 1,
        {"wealth_sweeps_per_geometry_sweep"},
        "wealth_sweeps_per_geometry_sweep must be positive");
  check(c.total_geometry_sweeps >= 1, {"total_geometry_sweeps"},
        "total_geometry_sweeps must be positive");
  check(c.total_geometry_sweeps > c.burn_in_geometry_sweeps,
        {"total_geometry_sweeps", "burn_in_geometry_sweeps"},
        "total_geometry_sweeps must exceed burn_in_geometry_sweeps");
  check(c.record_every >= 1, {"record_every"}, "record_every must be positive");
  check(finite(c.mean_degree) && c.mean_degree >= 0, {"mean_degree"},
        "mean_degree must be >= 0");
  check(finite(c.topology_mu) && c.topology_mu > 1, {"topology_mu"},
        "topology_mu must be > 1");
  check(finite(c.weight_mu) && c.weight_mu > 0, {"weight_mu"},
        "weight_mu must be > 0");
  check(c.wealth_bins_per_decade >= 1, {"wealth_bins_per_decade"},
        "wealth_bins_per_decade must be positive");
  check(c.wealth_hist_lo > 0 && c.wealth_hist_hi > c.wealth_hist_lo,
        {"wealth_hist_lo", "wealth_hist_hi"},
        "wealth histogram needs 0 < lo < hi");
  check(c.wealth_fit_lo > 0 && c.wealth_fit_hi > c.wealth_fit_lo,
        {"wealth_fit_lo", "wealth_fit_hi"}, "wealth fit needs 0 < lo < hi");
  check(c.degree_bins_per_decade >= 1, {"degree_bins_per_decade"},
        "degree_bins_per_decade must be positive");
  check(c.degree_hist_lo > 0 && c.degree_hist_hi > c.degree_hist_lo,
        {"degree_hist_lo", "degree_hist_hi"},
        "degree histogram needs 0 < lo < hi");
  check(c.degree_fit_lo > 0 && c.degree_fit_hi > c.degree_fit_lo,
        {"degree_fit_lo", "degree_fit_hi"}, "degree fit needs 0 < lo < hi");
  return out;
}

void validate(const SimConfig& config) {
  auto v = violations(config);
  if (!v.empty()) throw std::invalid_argument(v.front().message);
}

}  // namespace adaptrade
