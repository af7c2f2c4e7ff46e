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

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "adaptrade/config.hpp"
#include "adaptrade/dynamics.hpp"
#include "adaptrade/graph.hpp"
#include "adaptrade/observables.hpp"
#include "adaptrade/random.hpp"
#include "doctest.h"

using namespace adaptrade;

namespace {

SimConfig small_config() {
  SimConfig c;
  c.n_agents = 60;
  c.mean_degree = 3;
  c.a_add = 0.005;
  c.wealth_sweeps_per_geometry_sweep = 20;
  c.total_geometry_sweeps = 40;
  c.burn_in_geometry_sweeps = 10;
  c.record_every = 3;
  c.seed = 42;
  return c;
}

}  // namespace

TEST_CASE("link add probability") {
  CHECK(link_add_probability(1, 1, 0.01) == doctest::Approx(0.01 / 1.01).epsilon(1e-14));
  CHECK(link_add_probability(3, 3, 0) == 0.0);
  CHECK(link_add_probability(1e3, 1e3, 0.01) == doctest::Approx(1e4 / (1 + 1e4)).epsilon(1e-14));
  CHECK(link_add_probability(1e3, 1e3, 0.01) < 1.0);
  double prev = 0;
  for (double w = 0.01; w < 1e4; w *= 1.7) {
    const double p = link_add_probability(w, 2.0, 0.3);
    CHECK(p >= prev);
    CHECK(p < 1.0);
    prev = p;
  }
  CHECK_THROWS_AS(link_add_probability(-1, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(link_add_probability(1, 1, -0.1), std::invalid_argument);
}

TEST_CASE("geometry trials") {
  CHECK(geometry_trials(2) == 1);
  CHECK(geometry_trials(1000) == 499500);
}

TEST_CASE("geometry sweep with zero creation rate") {
  RandomStream rng(1);
  Graph empty(50);
  geometry_sweep(empty, Eigen::VectorXd::Ones(50), 0.0, 0.3, rng);
  CHECK(empty.n_edges() == 0);

  Graph g = Graph::complete(100);
  int sweeps = 0;
  while (g.n_edges() > 0 && sweeps < 40) {
    geometry_sweep(g, Eigen::VectorXd::Ones(100), 0.0, 1.0, rng);
    ++sweeps;
  }
  // Each edge survives a sweep with probability (1 - 1/P)^P ~ 1/e.
  CHECK(g.n_edges() == 0);
  CHECK(sweeps <= 25);
}

TEST_CASE("geometry sweep performs exactly N(N-1)/2 trials") {
  // Replays the documented draw sequence and compares the stream position.
  const std::size_t n = 7;
  RandomStream a(3), b(3);
  Graph g(n);
  const Eigen::VectorXd w = Eigen::VectorXd::LinSpaced(7, 0.5, 2.0);
  geometry_sweep(g, w, 0.4, 0.5, a);
  for (std::uint64_t t = 0; t < geometry_trials(n); ++t) {
    b.index(n);
    b.index(n - 1);
    b.uniform();
  }
  CHECK(a.uniform() == b.uniform());
}

TEST_CASE("geometry sweep errors") {
  RandomStream rng(1);
  Graph g(5);
  CHECK_THROWS_AS(geometry_sweep(g, Eigen::VectorXd::Ones(4), 0.1, 0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(geometry_sweep(g, Eigen::VectorXd::Ones(5), 0.1, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(geometry_sweep(g, Eigen::VectorXd::Ones(5), -0.1, 0.1, rng), std::invalid_argument);
}

TEST_CASE("single pair occupancy matches the stationary law") {
  // Thinned samples, so the binomial error applies (chain time ~ 1/(p_add + r)).
  const double a = 0.02, r = 0.1;
  const double wiwj = 1.0;
  const Eigen::Vector2d w(1.0, wiwj);
  RandomStream rng(17);
  Graph g(2);
  const int thin = 60, samples = 50000;
  long linked = 0;
  for (int s = 0; s < samples; ++s) {
    for (int k = 0; k < thin; ++k) geometry_sweep(g, w, a, r, rng);
    linked += static_cast<long>(g.n_edges());
  }
  const double p = stationary_link_probability(1.0, wiwj, a / r, r);
  const double occ = static_cast<double>(linked) / samples;
  const double se = std::sqrt(p * (1 - p) / samples);
  CHECK(std::abs(occ - p) <= 4.0 * se);
}

TEST_CASE("continuous scaling") {
  const auto c = continuous_scaling(0.005, 1.0, 0.001);
  CHECK(c.j0 == doctest::Approx(5e-6).epsilon(1e-14));
  CHECK(c.sigma0 == doctest::Approx(0.031623).epsilon(1e-5));
  const auto u = continuous_scaling(0.3, 0.7, 1.0);
  CHECK(u.j0 == 0.3);
  CHECK(u.sigma0 == 0.7);
  CHECK_THROWS_AS(continuous_scaling(200, 1, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(continuous_scaling(1, 1, 0), std::invalid_argument);
}

TEST_CASE("Pareto weights") {
  RandomStream rng(4);
  const auto w = sample_pareto_weights(1000, 2.5, rng);
  CHECK(w.mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((w.array() > 0).all());
  CHECK_THROWS_AS(sample_pareto_weights(0, 2.5, rng), std::invalid_argument);
}

TEST_CASE("quenched network keeps the edge set") {
  SimConfig c = small_config();
  c.mode = Mode::quenched_network;
  Simulation sim(c);
  const auto before = sim.graph().edges();
  const auto w0 = sim.weights();
  for (int t = 0; t < 20; ++t) sim.step();
  CHECK(sim.graph().edges() == before);
  CHECK(sim.weights() != w0);
  CHECK(sim.steps_done() == 20);
}

TEST_CASE("quenched wealth keeps the weights") {
  SimConfig c = small_config();
  c.mode = Mode::quenched_wealth;
  c.a_add = 0.05;
  Simulation sim(c);
  const Eigen::VectorXd w0 = sim.weights();
  CHECK(sim.wealth().total() == doctest::Approx(60.0).epsilon(1e-12));
  const auto e0 = sim.graph().edges();
  for (int t = 0; t < 20; ++t) sim.step();
  CHECK(sim.weights() == w0);
  CHECK(sim.graph().edges() != e0);
}

TEST_CASE("quenched wealth per-pair occupancy on a small system") {
  SimConfig c;
  c.n_agents = 4;
  c.mode = Mode::quenched_wealth;
  c.topology = Topology::empty;
  c.weight_mu = 1.5;
  c.a_add = 0.2;
  c.r_remove = 0.3;
  c.seed = 5;
  Simulation sim(c);
  const Eigen::VectorXd w = sim.weights();
  const int steps = 200000;
  std::vector<long> linked(16, 0);
  for (int t = 0; t < steps; ++t) {
    sim.step();
    for (NodeId i = 0; i < 4; ++i)
      for (NodeId j = i + 1; j < 4; ++j) linked[i * 4 + j] += sim.graph().has_edge(i, j);
  }
  for (NodeId i = 0; i < 4; ++i)
    for (NodeId j = i + 1; j < 4; ++j) {
      const double p = stationary_link_probability(w[i], w[j], c.beta(), c.r_remove);
      CHECK(static_cast<double>(linked[i * 4 + j]) / steps == doctest::Approx(p).epsilon(0.01 / p));
    }
}

TEST_CASE("zero exchange drives condensation") {
  // Pure multiplicative noise: the replica-mean Y2 keeps growing.
  SimConfig c = small_config();
  c.n_agents = 200;
  c.j_phys = 0.0;
  c.w_min = 0.0;
  c.a_add = 0.02 * 0.1;
  c.total_geometry_sweeps = 300;
  c.burn_in_geometry_sweeps = 0;
  c.record_every = 1;
  c.wealth_sweeps_per_geometry_sweep = 40;
  const int replicas = 12;
  std::vector<double> block(6, 0.0);
  for (int k = 0; k < replicas; ++k) {
    c.seed = mix_seed(1234, static_cast<std::uint64_t>(k));
    const RunOutput out = run_simulation(c);
    REQUIRE(out.timeseries.size() == 300);
    for (std::size_t t = 0; t < 300; ++t)
      block[t / 50] += out.timeseries[t].y2_wealth / (50.0 * replicas);
  }
  for (std::size_t k = 1; k < block.size(); ++k) CHECK(block[k] > block[k - 1]);
  CHECK(block.back() > 0.2);
}

TEST_CASE("run output structure") {
  const SimConfig c = small_config();
  const RunOutput out = run_simulation(c);
  REQUIRE(out.timeseries.size() == 10);
  for (std::size_t k = 0; k < out.timeseries.size(); ++k) {
    CHECK(out.timeseries[k].sweep == c.burn_in_geometry_sweeps + 3 * (k + 1));
    CHECK(out.timeseries[k].y2_wealth >= 1.0 / 60 - 1e-15);
    CHECK(out.timeseries[k].y2_wealth <= 1.0);
  }
  double integral = 0;
  const Histogram& h = out.wealth_histogram;
  for (std::size_t k = 0; k < h.n_bins(); ++k) integral += h.density(k) * h.bin_width(k);
  const double inside =
      1.0 - static_cast<double>(h.underflow() + h.overflow()) / static_cast<double>(h.total_count());
  CHECK(integral == doctest::Approx(inside).epsilon(1e-6));
  CHECK(h.total_count() == 600);
  CHECK(out.final_weights.size() == 60);
  CHECK(out.final_weights.mean() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(out.final_degrees.size() == 60);
  CHECK(out.code_version == code_version());
  CHECK(out.config == c);
}

TEST_CASE("runs are deterministic") {
  const SimConfig c = small_config();
  const RunOutput a = run_simulation(c), b = run_simulation(c);
  CHECK(a.timeseries == b.timeseries);
  CHECK(a.wealth_histogram == b.wealth_histogram);
  CHECK(a.degree_histogram == b.degree_histogram);
  CHECK(a.final_weights == b.final_weights);
  CHECK(a.final_edges == b.final_edges);
  SimConfig d = c;
  d.seed = 43;
  CHECK(run_simulation(d).final_weights != a.final_weights);
}

TEST_CASE("observer sees every step") {
  std::size_t calls = 0;
  run_simulation(small_config(), [&](const Simulation& s) { CHECK(s.steps_done() == ++calls); });
  CHECK(calls == 40);
}

TEST_CASE("run_simulation rejects invalid configs") {
  SimConfig c = small_config();
  c.burn_in_geometry_sweeps = c.total_geometry_sweeps;
  CHECK_THROWS_AS(run_simulation(c), std::invalid_argument);
  c = small_config();
  c.epsilon = 1.0;
  c.j_phys = 2.0;
  CHECK_THROWS_AS(Simulation{c}, std::invalid_argument);
}
