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

#include "adaptrade/dynamics.hpp"

#include <cmath>

namespace adaptrade {

void geometry_sweep(Graph& graph, ConstVectorRef weights, double a, double r,
                    RandomStream& rng) {
  const std::size_t n = graph.n_nodes();
  if (static_cast<std::size_t>(weights.size()) != n)
    throw std::invalid_argument("geometry_sweep: weights/graph size mismatch");
  if (!(r > 0 && r <= 1)) throw std::invalid_argument("geometry_sweep: r must lie in (0, 1]");
  if (!(a >= 0)) throw std::invalid_argument("geometry_sweep: a must be >= 0");
  if (n < 2) return;

  const std::uint64_t trials = geometry_trials(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    const auto i = static_cast<NodeId>(rng.index(n));
    auto j = static_cast<NodeId>(rng.index(n - 1));
    if (j >= i) ++j;
    const double u = rng.uniform();
    if (graph.has_edge(i, j)) {
      if (u < r) graph.remove_edge(i, j);
    } else if (u < link_add_probability(weights[i], weights[j], a)) {
      graph.add_edge(i, j);
    }
  }
}

SweepCouplings continuous_scaling(double j_phys, double sigma_phys, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("continuous_scaling: epsilon must be > 0");
  if (!(j_phys >= 0) || !(sigma_phys >= 0))
    throw std::invalid_argument("continuous_scaling: J and sigma must be >= 0");
  if (epsilon * j_phys >= 1)
    throw std::invalid_argument("continuous_scaling: epsilon * J must be < 1");
  return {epsilon * j_phys, std::sqrt(epsilon) * sigma_phys};
}

Eigen::VectorXd sample_pareto_weights(std::size_t n, double mu, RandomStream& rng) {
  if (n == 0 || !(mu > 0)) throw std::invalid_argument("sample_pareto_weights: need n > 0, mu > 0");
  Eigen::VectorXd w(static_cast<Eigen::Index>(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) w[i] = std::pow(1.0 - rng.uniform(), -1.0 / mu);
  return w / w.mean();
}

Graph make_topology(const SimConfig& config, RandomStream& rng) {
  const std::size_t n = config.n_agents;
  switch (config.topology) {
    case Topology::empty:
      return Graph(n);
    case Topology::erdos_renyi:
      return sample_erdos_renyi(n, config.mean_degree, rng);
    case Topology::regular:
      return sample_regular(n, static_cast<std::size_t>(std::llround(config.mean_degree)), rng);
    case Topology::scale_free:
      return sample_scale_free(n, config.topology_mu, config.mean_degree, rng);
    case Topology::complete:
      return Graph::complete(n);
  }
  throw std::invalid_argument("make_topology: unknown topology");
}

namespace {

const SimConfig& validated(const SimConfig& config) {
  validate(config);
  return config;
}

WealthState<double> initial_wealth(const SimConfig& config, RandomStream& rng) {
  const auto n = static_cast<Eigen::Index>(config.n_agents);
  if (config.mode != Mode::quenched_wealth) return WealthState<double>::constant(n);
  WealthState<double> state(sample_pareto_weights(config.n_agents, config.weight_mu, rng));
  normalize_wealth(state);
  return state;
}

}  // namespace

Simulation::Simulation(const SimConfig& config)
    : config_(validated(config)),
      couplings_(continuous_scaling(config.j_phys, config.sigma_phys, config.epsilon)),
      rng_(config.seed) {
  graph_ = make_topology(config_, rng_);
  wealth_ = initial_wealth(config_, rng_);
}

void Simulation::step() {
  if (config_.mode != Mode::quenched_wealth) {
    if (!trade_) trade_.emplace(graph_);
    const auto n = wealth_.size();
    for (std::size_t s = 0; s < config_.wealth_sweeps_per_geometry_sweep; ++s) {
      wealth_update_sweep(wealth_, *trade_, couplings_.j0,
                          sample_noise(rng_, couplings_.sigma0, n));
      apply_wealth_floor(wealth_, config_.w_min);
      last_mean_ = wealth_.mean();
      normalize_wealth(wealth_);
    }
  }
  if (config_.mode != Mode::quenched_network) {
    geometry_sweep(graph_, normalized_weights(wealth_), config_.a_add, config_.r_remove, rng_);
    trade_.reset();
  }
  ++steps_;
}

std::string code_version() { return ADAPTRADE_VERSION; }

namespace {

void fit_or_note(const Histogram& hist, double lo, double hi, std::optional<TailFit>& fit,
                 std::string& note) {
  try {
    fit = fit_power_law_tail(hist, lo, hi);
  } catch (const FitError& e) {
    fit.reset();
    note = e.what();
  }
}

}  // namespace

RunOutput run_simulation(const SimConfig& config, const StepObserver& observer) {
  Simulation sim(config);
  const std::size_t n = config.n_agents;

  RunOutput out;
  out.config = config;
  out.code_version = code_version();
  out.wealth_histogram = Histogram::logarithmic(config.wealth_hist_lo, config.wealth_hist_hi,
                                                config.wealth_bins_per_decade);
  out.degree_histogram = Histogram::logarithmic(config.degree_hist_lo, config.degree_hist_hi,
                                                config.degree_bins_per_decade);
  out.raw_degree_histogram =
      Histogram::logarithmic(0.5, static_cast<double>(n), config.degree_bins_per_decade);

  for (std::size_t t = 1; t <= config.total_geometry_sweeps; ++t) {
    sim.step();
    if (observer) observer(sim);
    if (t <= config.burn_in_geometry_sweeps ||
        (t - config.burn_in_geometry_sweeps) % config.record_every != 0)
      continue;

    const Eigen::VectorXd w = sim.weights();
    const Graph& g = sim.graph();
    out.timeseries.push_back(
        {t, g.n_edges(), inverse_participation_ratio(w), sim.last_mean_wealth()});
    for (Eigen::Index i = 0; i < w.size(); ++i) out.wealth_histogram.add(w[i]);
    const double mean_degree = 2.0 * static_cast<double>(g.n_edges()) / static_cast<double>(n);
    for (auto q : g.degrees()) {
      out.raw_degree_histogram.add(q);
      out.degree_histogram.add(mean_degree > 0 ? q / mean_degree : 0.0);
    }
  }

  fit_or_note(out.wealth_histogram, config.wealth_fit_lo, config.wealth_fit_hi, out.wealth_fit,
              out.wealth_fit_note);
  fit_or_note(out.degree_histogram, config.degree_fit_lo, config.degree_fit_hi, out.degree_fit,
              out.degree_fit_note);
  out.final_weights = sim.weights();
  out.final_degrees = sim.graph().degrees();
  out.final_edges = sim.graph().edges();
  return out;
}

}  // namespace adaptrade
