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
#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <vector>

#include "adaptrade/graph.hpp"
#include "adaptrade/observables.hpp"
#include "adaptrade/random.hpp"
#include "doctest.h"

using namespace adaptrade;

namespace {

// Full recount of every structural invariant against the edge list.
void check_structure(const Graph& g) {
  const std::size_t n = g.n_nodes();
  std::vector<std::uint32_t> recount(n, 0);
  std::set<Edge> seen;
  for (auto [i, j] : g.edges()) {
    REQUIRE(i < j);
    REQUIRE(j < n);
    REQUIRE(seen.insert({i, j}).second);
    REQUIRE(g.has_edge(i, j));
    REQUIRE(g.has_edge(j, i));
    ++recount[i];
    ++recount[j];
  }
  CHECK(recount == g.degrees());
  std::size_t sum = 0;
  for (auto q : g.degrees()) sum += q;
  CHECK(sum == 2 * g.n_edges());
  CHECK(seen.size() == g.n_edges());
}

}  // namespace

TEST_CASE("basic graph operations") {
  Graph g(4);
  CHECK(g.n_nodes() == 4);
  CHECK(g.n_edges() == 0);
  CHECK(g.add_edge(2, 0));
  CHECK_FALSE(g.add_edge(0, 2));
  CHECK(g.add_edge(1, 2));
  CHECK(g.has_edge(0, 2));
  CHECK(g.has_edge(2, 0));
  CHECK_FALSE(g.has_edge(0, 1));
  CHECK(g.degree(2) == 2);
  CHECK(g.edges() == std::vector<Edge>{{0, 2}, {1, 2}});
  CHECK(g.remove_edge(2, 0));
  CHECK_FALSE(g.remove_edge(0, 2));
  CHECK(g.degree(2) == 1);
  CHECK(g.n_edges() == 1);
  CHECK_THROWS_AS(g.add_edge(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(1, 4), std::out_of_range);
  g.clear();
  CHECK(g.n_edges() == 0);
  CHECK(g.degrees() == std::vector<std::uint32_t>(4, 0));
  check_structure(g);
}

TEST_CASE("copies are independent") {
  Graph g(3);
  g.add_edge(0, 1);
  Graph h = g;
  h.add_edge(1, 2);
  CHECK(g.n_edges() == 1);
  CHECK(h.n_edges() == 2);
  g = h;
  CHECK(g.edges() == h.edges());
}

TEST_CASE("complete graph") {
  const Graph k = Graph::complete(5);
  CHECK(k.n_edges() == 10);
  CHECK(k.is_complete());
  check_structure(k);
  Graph g = k;
  g.remove_edge(0, 1);
  CHECK_FALSE(g.is_complete());
}

TEST_CASE("adjacency lists are sorted and consistent") {
  RandomStream rng(3);
  const Graph g = sample_erdos_renyi(200, 6, rng);
  const Adjacency adj = g.adjacency();
  REQUIRE(adj.n_nodes() == 200);
  for (NodeId i = 0; i < 200; ++i) {
    CHECK(adj.degree(i) == g.degree(i));
    CHECK(std::is_sorted(adj.neighbors.begin() + static_cast<std::ptrdiff_t>(adj.offsets[i]),
                         adj.neighbors.begin() + static_cast<std::ptrdiff_t>(adj.offsets[i + 1])));
    for (auto k = adj.offsets[i]; k < adj.offsets[i + 1]; ++k)
      CHECK(g.has_edge(i, adj.neighbors[k]));
  }
}

TEST_CASE("random edits against an adjacency matrix model") {
  RandomStream rng(99);
  for (int round = 0; round < 5; ++round) {
    const std::size_t n = 10 + 10 * static_cast<std::size_t>(round);
    Graph g(n);
    std::vector<std::vector<bool>> model(n, std::vector<bool>(n, false));
    for (int op = 0; op < 5000; ++op) {
      const auto i = static_cast<NodeId>(rng.index(n));
      auto j = static_cast<NodeId>(rng.index(n - 1));
      if (j >= i) ++j;
      if (rng.uniform() < 0.6) {
        CHECK(g.add_edge(i, j) == !model[i][j]);
        model[i][j] = model[j][i] = true;
      } else {
        CHECK(g.remove_edge(i, j) == model[i][j]);
        model[i][j] = model[j][i] = false;
      }
    }
    std::size_t links = 0;
    for (NodeId i = 0; i < n; ++i) {
      std::uint32_t q = 0;
      for (NodeId j = 0; j < n; ++j) {
        if (i != j) CHECK(g.has_edge(i, j) == model[i][j]);
        q += model[i][j] ? 1 : 0;
      }
      CHECK(g.degree(i) == q);
      links += q;
    }
    CHECK(2 * g.n_edges() == links);
    check_structure(g);
  }
}

TEST_CASE("stationary link probability") {
  CHECK(stationary_link_probability(1, 1, 0.02, 0.1) == doctest::Approx(0.02 / 1.022).epsilon(1e-14));
  CHECK(stationary_link_probability(1, 1, 0.02, 0.1) == doctest::Approx(0.019569).epsilon(1e-4));
  CHECK(stationary_link_probability(0, 3.0, 0.5, 0.1) == 0.0);
  CHECK(stationary_link_probability(2, 2, 1e12, 0.1) == doctest::Approx(1 / 1.1).epsilon(1e-10));
  CHECK(stationary_link_probability(2, 2, std::numeric_limits<double>::infinity(), 0.1) ==
        doctest::Approx(1 / 1.1));
  CHECK(stationary_link_probability(5, 5, 1e6, 1.0) < 1.0);
  CHECK_THROWS_AS(stationary_link_probability(-1, 1, 1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(stationary_link_probability(1, 1, -1, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(stationary_link_probability(1, 1, 1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(stationary_link_probability(1, 1, 1, 1.5), std::invalid_argument);
}

TEST_CASE("Erdos-Renyi mean degree concentrates") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomStream rng(seed);
    const Graph g = sample_erdos_renyi(1000, 4, rng);
    const double mean = 2.0 * static_cast<double>(g.n_edges()) / 1000.0;
    CHECK(mean >= 3.7);
    CHECK(mean <= 4.3);
    if (seed <= 3) check_structure(g);
  }
}

TEST_CASE("Erdos-Renyi limits and errors") {
  RandomStream rng(1);
  const Graph k = sample_erdos_renyi(10, 9, rng);
  CHECK(k.n_edges() == 45);
  CHECK(k.is_complete());
  CHECK_THROWS_AS(sample_erdos_renyi(10, 0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_erdos_renyi(10, 9.5, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_erdos_renyi(10, -1, rng), std::invalid_argument);
}

TEST_CASE("regular graphs") {
  RandomStream rng(7);
  const Graph g = sample_regular(10, 3, rng);
  for (auto q : g.degrees()) CHECK(q == 3);
  check_structure(g);

  const Graph k4 = sample_regular(4, 3, rng);
  CHECK(k4.is_complete());

  const Graph big = sample_regular(1000, 4, rng);
  std::size_t sum = 0;
  for (auto q : big.degrees()) {
    CHECK(q == 4);
    sum += q;
  }
  CHECK(sum == 4000);
  check_structure(big);

  CHECK_THROWS_AS(sample_regular(5, 3, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_regular(5, 5, rng), std::invalid_argument);
}

TEST_CASE("configuration model realizes the sequence exactly") {
  RandomStream rng(13);
  const std::vector<std::uint32_t> seq{5, 1, 1, 1, 1, 1, 3, 2, 2, 3};
  const Graph g = configuration_model(seq, rng);
  CHECK(g.degrees() == seq);
  check_structure(g);
  CHECK_THROWS(configuration_model({3, 1}, rng));
  CHECK_THROWS(configuration_model({1, 1, 1}, rng));
}

TEST_CASE("scale-free degree sequence") {
  RandomStream rng(21);
  const Graph g = sample_scale_free(10000, 1.5, 4, rng);
  check_structure(g);
  const double mean = 2.0 * static_cast<double>(g.n_edges()) / 10000.0;
  CHECK(std::abs(mean - 4.0) <= 0.2);

  Eigen::VectorXd q(10000);
  for (Eigen::Index i = 0; i < q.size(); ++i) q[i] = g.degree(static_cast<NodeId>(i));
  const Histogram h = log_histogram(q, 5, 0.5, 1e4);
  const TailFit fit = fit_power_law_tail(h, 6, 400);
  CHECK(fit.slope == doctest::Approx(2.5).epsilon(0.3 / 2.5));

  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RandomStream r(seed);
    const Graph s = sample_scale_free(1000, 1.5, 4, r);
    const double m = 2.0 * static_cast<double>(s.n_edges()) / 1000.0;
    CHECK(std::abs(m - 4.0) <= 0.5);
    check_structure(s);
  }

  // Draws whose largest hub lands near n-1 used to defeat stub matching.
  for (std::uint64_t seed : {24, 45, 67, 94, 126, 130, 175, 180, 185, 188})
    CHECK_NOTHROW(RandomStream r(seed); check_structure(sample_scale_free(1000, 1.5, 4, r)));

  CHECK_THROWS_AS(sample_scale_free(100, 1.0, 4, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_scale_free(100, 1.5, 0.5, rng), std::invalid_argument);
}

TEST_CASE("edge list export") {
  Graph g(4);
  g.add_edge(3, 1);
  g.add_edge(0, 2);
  std::ostringstream out;
  write_edge_list(out, g);
  CHECK(out.str() == "0 2\n1 3\n");
}
