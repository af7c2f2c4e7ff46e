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

#ifndef ADAPTRADE_DYNAMICS_HPP_
#define ADAPTRADE_DYNAMICS_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptrade/config.hpp"
#include "adaptrade/graph.hpp"
#include "adaptrade/observables.hpp"
#include "adaptrade/random.hpp"
#include "adaptrade/wealth.hpp"

namespace adaptrade {

/// Probability that an absent link (i, j) appears in one trial:
/// a w_i w_j / (1 + a w_i w_j).
inline double link_add_probability(double wi, double wj, double a) {
  if (wi < 0 || wj < 0 || a < 0)
    throw std::invalid_argument("link_add_probability: negative input");
  const double x = a * wi * wj;
  if (x > 1e300) return 1.0;
  return x / (1.0 + x);
}

/// Number of pair trials in one geometry sweep, N(N-1)/2.
inline std::uint64_t geometry_trials(std::size_t n) {
  return static_cast<std::uint64_t>(n) * (n - 1) / 2;
}

/// N(N-1)/2 independent trials. Each draws a uniform pair i != j; an absent
/// link is created with link_add_probability(w_i, w_j, a), an existing one
/// is removed with probability r. Every trial draws index(N), index(N-1)
/// and one uniform, in that order.
void geometry_sweep(Graph& graph, ConstVectorRef weights, double a, double r,
                    RandomStream& rng);

struct SweepCouplings {
  double j0;
  double sigma0;
};

/// Per-sweep couplings from physical ones: j0 = eps J, sigma0 = sqrt(eps) sigma.
SweepCouplings continuous_scaling(double j_phys, double sigma_phys, double epsilon);

/// I.i.d. Pareto(mu) weights (W >= 1, density ~ W^(-1-mu)), rescaled to mean 1.
Eigen::VectorXd sample_pareto_weights(std::size_t n, double mu, RandomStream& rng);

/// Graph described by config.topology / mean_degree / topology_mu.
Graph make_topology(const SimConfig& config, RandomStream& rng);

// One run of the coupled system. Each step() is one outer cycle: the wealth
// sector performs wealth_sweeps_per_geometry_sweep sweeps (update, floor,
// normalize), then the link sector performs one geometry sweep using the
// freshly normalized weights. The frozen sector of a quenched mode is
// skipped.
class Simulation {
 public:
  explicit Simulation(const SimConfig& config);

  void step();

  const SimConfig& config() const { return config_; }
  std::size_t steps_done() const { return steps_; }
  const WealthState<double>& wealth() const { return wealth_; }
  Eigen::VectorXd weights() const { return normalized_weights(wealth_); }
  const Graph& graph() const { return graph_; }
  /// Mean wealth after the last update and floor, before renormalization.
  double last_mean_wealth() const { return last_mean_; }

 private:
  SimConfig config_;
  SweepCouplings couplings_;
  RandomStream rng_;
  Graph graph_;
  WealthState<double> wealth_;
  std::optional<TradeOperator<double>> trade_;
  std::size_t steps_ = 0;
  double last_mean_ = 1.0;
};

struct TimeseriesRecord {
  std::size_t sweep;      // geometry-sweep (outer step) index, 1-based
  std::size_t links;
  double y2_wealth;
  double mean_wealth;     // before normalization

  bool operator==(const TimeseriesRecord&) const = default;
};

// Everything a run produces. Histograms accumulate the normalized weights
// and degrees of every recorded step after burn-in.
struct RunOutput {
  SimConfig config;
  std::string code_version;
  std::vector<TimeseriesRecord> timeseries;
  Histogram wealth_histogram;      // over w
  Histogram degree_histogram;      // over q / <q>
  Histogram raw_degree_histogram;  // over q
  std::optional<TailFit> wealth_fit;
  std::optional<TailFit> degree_fit;
  std::string wealth_fit_note;     // reason when wealth_fit is empty
  std::string degree_fit_note;
  Eigen::VectorXd final_weights;
  std::vector<std::uint32_t> final_degrees;
  std::vector<Edge> final_edges;
};

using StepObserver = std::function<void(const Simulation&)>;

/// Runs config.total_geometry_sweeps outer steps from uniform wealth.
/// Identical configs (seed included) give identical outputs.
RunOutput run_simulation(const SimConfig& config, const StepObserver& observer = {});

std::string code_version();

}  // namespace adaptrade

#endif  // ADAPTRADE_DYNAMICS_HPP_
