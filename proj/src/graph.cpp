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

#include "adaptrade/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"

namespace adaptrade {
namespace {

std::uint64_t edge_key(NodeId i, NodeId j) {
  if (i > j) std::swap(i, j);
  return (static_cast<std::uint64_t>(i) << 32) | j;
}

Edge key_edge(std::uint64_t key) {
  return {static_cast<NodeId>(key >> 32), static_cast<NodeId>(key & 0xffffffffu)};
}

// Fixed, process-independent mixing so hashing never depends on address
// randomization.
struct EdgeHash {
  std::size_t operator()(std::uint64_t key) const { return splitmix64(key); }
};

}  // namespace

struct Graph::EdgeSet {
  absl::flat_hash_set<std::uint64_t, EdgeHash> keys;
};

Graph::Graph(std::size_t n_nodes)
    : edges_(std::make_unique<EdgeSet>()), degree_(n_nodes, 0) {
  if (n_nodes > 0xffffffffu) throw std::invalid_argument("graph too large");
}

Graph::Graph(const Graph& other)
    : edges_(std::make_unique<EdgeSet>(*other.edges_)), degree_(other.degree_) {}

Graph::Graph(Graph&&) noexcept = default;

Graph& Graph::operator=(const Graph& other) {
  if (this != &other) {
    edges_ = std::make_unique<EdgeSet>(*other.edges_);
    degree_ = other.degree_;
  }
  return *this;
}

Graph& Graph::operator=(Graph&&) noexcept = default;
Graph::~Graph() = default;

std::size_t Graph::n_edges() const { return edges_->keys.size(); }

void Graph::check_pair(NodeId i, NodeId j) const {
  if (i >= n_nodes() || j >= n_nodes())
    throw std::out_of_range("node index out of range");
  if (i == j) throw std::invalid_argument("self-loops are not allowed");
}

bool Graph::has_edge(NodeId i, NodeId j) const {
  if (i == j) return false;
  return edges_->keys.contains(edge_key(i, j));
}

bool Graph::add_edge(NodeId i, NodeId j) {
  check_pair(i, j);
  if (!edges_->keys.insert(edge_key(i, j)).second) return false;
  ++degree_[i];
  ++degree_[j];
  return true;
}

bool Graph::remove_edge(NodeId i, NodeId j) {
  check_pair(i, j);
  if (edges_->keys.erase(edge_key(i, j)) == 0) return false;
  --degree_[i];
  --degree_[j];
  return true;
}

void Graph::clear() {
  edges_->keys.clear();
  std::fill(degree_.begin(), degree_.end(), 0);
}

bool Graph::is_complete() const {
  const std::size_t n = n_nodes();
  return n >= 2 && n_edges() == n * (n - 1) / 2;
}

std::vector<Edge> Graph::edges() const {
  std::vector<std::uint64_t> keys(edges_->keys.begin(), edges_->keys.end());
  std::sort(keys.begin(), keys.end());
  std::vector<Edge> out;
  out.reserve(keys.size());
  for (auto k : keys) out.push_back(key_edge(k));
  return out;
}

Adjacency Graph::adjacency() const {
  const std::size_t n = n_nodes();
  Adjacency adj;
  adj.offsets.assign(n + 1, 0);
  for (std::size_t i = 0; i < n; ++i) adj.offsets[i + 1] = adj.offsets[i] + degree_[i];
  adj.neighbors.resize(adj.offsets[n]);
  std::vector<std::size_t> cursor(adj.offsets.begin(), adj.offsets.end() - 1);
  for (auto key : edges_->keys) {
    auto [i, j] = key_edge(key);
    adj.neighbors[cursor[i]++] = j;
    adj.neighbors[cursor[j]++] = i;
  }
  for (std::size_t i = 0; i < n; ++i)
    std::sort(adj.neighbors.begin() + adj.offsets[i],
              adj.neighbors.begin() + adj.offsets[i + 1]);
  return adj;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  g.edges_->keys.reserve(n * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

double stationary_link_probability(double wi, double wj, double beta, double r) {
  if (wi < 0 || wj < 0 || beta < 0)
    throw std::invalid_argument("stationary_link_probability: negative input");
  if (!(r > 0 && r <= 1))
    throw std::invalid_argument("stationary_link_probability: r must lie in (0, 1]");
  const double x = beta * wi * wj;
  if (std::isinf(x)) return 1.0 / (1.0 + r);
  return x / (1.0 + (1.0 + r) * x);
}

Graph sample_erdos_renyi(std::size_t n, double mean_degree, RandomStream& rng) {
  if (n < 2 || !(mean_degree > 0) || mean_degree > static_cast<double>(n - 1))
    throw std::invalid_argument("sample_erdos_renyi: mean_degree must lie in (0, n-1]");
  const double p = mean_degree / static_cast<double>(n - 1);
  Graph g(n);
  for (NodeId i = 0; i < n; ++i)
    for (NodeId j = i + 1; j < n; ++j)
      if (rng.uniform() < p) g.add_edge(i, j);
  return g;
}

Graph configuration_model(const std::vector<std::uint32_t>& degrees,
                          RandomStream& rng, int max_attempts) {
  const std::size_t n = degrees.size();
  std::uint64_t stub_count = 0;
  for (auto d : degrees) {
    if (d >= n) throw std::invalid_argument("configuration_model: degree >= n");
    stub_count += d;
  }
  if (stub_count % 2 != 0)
    throw std::invalid_argument("configuration_model: odd degree sum");

  std::vector<NodeId> stubs;
  stubs.reserve(stub_count);
  for (NodeId i = 0; i < n; ++i) stubs.insert(stubs.end(), degrees[i], i);
  const std::size_t n_pairs = stub_count / 2;
  if (n_pairs == 0) return Graph(n);

  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    std::shuffle(stubs.begin(), stubs.end(), rng.engine());
    std::vector<Edge> pairs(n_pairs);
    absl::flat_hash_map<std::uint64_t, int> multiplicity;
    for (std::size_t k = 0; k < n_pairs; ++k) {
      pairs[k] = {stubs[2 * k], stubs[2 * k + 1]};
      ++multiplicity[edge_key(pairs[k].first, pairs[k].second)];
    }
    auto is_bad = [&](const Edge& e) {
      return e.first == e.second || multiplicity[edge_key(e.first, e.second)] > 1;
    };

    std::vector<std::size_t> bad;
    for (std::size_t k = 0; k < n_pairs; ++k)
      if (is_bad(pairs[k])) bad.push_back(k);

    const std::size_t budget = 200 * (n_pairs + 10);
    for (std::size_t iter = 0; iter < budget && !bad.empty(); ++iter) {
      const std::size_t k = bad.back();
      if (!is_bad(pairs[k])) {
        bad.pop_back();
        continue;
      }
      const std::size_t m = rng.index(n_pairs);
      if (m == k) continue;
      auto [a, b] = pairs[k];
      auto [c, d] = pairs[m];
      if (rng.uniform() < 0.5) std::swap(c, d);
      // Proposed replacement: (a, c) and (b, d).
      if (a == c || b == d) continue;
      const auto k1 = edge_key(a, c), k2 = edge_key(b, d);
      if (k1 == k2) continue;
      auto present = [&](std::uint64_t key) {
        auto it = multiplicity.find(key);
        return it != multiplicity.end() && it->second > 0;
      };
      if (present(k1) || present(k2)) continue;
      --multiplicity[edge_key(a, b)];
      --multiplicity[edge_key(pairs[m].first, pairs[m].second)];
      ++multiplicity[k1];
      ++multiplicity[k2];
      pairs[k] = {a, c};
      pairs[m] = {b, d};
      bad.pop_back();
      // Removing a duplicate may leave its twin still flagged; it is
      // rechecked lazily when reached.
    }
    bool simple = bad.empty();
    if (simple)
      for (const auto& e : pairs)
        if (is_bad(e)) {
          simple = false;
          break;
        }
    if (!simple) continue;

    Graph g(n);
    for (const auto& [a, b] : pairs) g.add_edge(a, b);
    return g;
  }
  throw std::runtime_error("configuration_model: no simple realization found after " +
                           std::to_string(max_attempts) + " attempts");
}

Graph sample_regular(std::size_t n, std::size_t degree, RandomStream& rng) {
  if (degree >= n || (n * degree) % 2 != 0)
    throw std::invalid_argument("sample_regular: need degree < n and n*degree even");
  if (degree == n - 1) return Graph::complete(n);
  return configuration_model(std::vector<std::uint32_t>(n, degree), rng);
}

namespace {

Graph draw_scale_free(std::size_t n, double tail_exponent_mu, double mean_degree,
                      RandomStream& rng) {
  // Pareto quantiles u^(-1/mu) are drawn once; the scale is then tuned so
  // the rounded sequence hits the requested mean.
  std::vector<double> quantile(n);
  for (auto& x : quantile) x = std::pow(1.0 - rng.uniform(), -1.0 / tail_exponent_mu);

  const double cap = static_cast<double>(n - 1);
  std::vector<std::uint32_t> degrees(n);
  auto realize = [&](double scale) {
    double sum = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const double q = std::clamp(std::round(scale * quantile[i]), 1.0, cap);
      degrees[i] = static_cast<std::uint32_t>(q);
      sum += q;
    }
    return sum / static_cast<double>(n);
  };

  double lo = 0.0, hi = mean_degree;
  while (realize(hi) < mean_degree) hi *= 2;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    (realize(mid) < mean_degree ? lo : hi) = mid;
  }
  const double mean_lo = realize(lo);
  const double mean_hi = realize(hi);
  realize(std::abs(mean_lo - mean_degree) <= std::abs(mean_hi - mean_degree) ? lo : hi);

  const std::uint64_t sum = std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0});
  if (sum % 2 != 0) {
    auto it = std::min_element(degrees.begin(), degrees.end());
    ++*it;
  }
  const double realized =
      static_cast<double>(std::accumulate(degrees.begin(), degrees.end(), std::uint64_t{0})) /
      static_cast<double>(n);
  if (std::abs(realized - mean_degree) > 0.05 * mean_degree)
    throw std::runtime_error("sample_scale_free: cannot match mean degree within 5%");
  return configuration_model(degrees, rng, 5);
}

}  // namespace

Graph sample_scale_free(std::size_t n, double tail_exponent_mu, double mean_degree,
                        RandomStream& rng) {
  if (!(tail_exponent_mu > 1))
    throw std::invalid_argument("sample_scale_free: tail exponent must exceed 1");
  if (n < 3 || !(mean_degree >= 1) || mean_degree >= static_cast<double>(n - 1))
    throw std::invalid_argument("sample_scale_free: mean_degree must lie in [1, n-1)");

  // A draw whose top hub sits near n-1 is graphical but nearly forced and
  // rarely realizable by stub matching; such draws are replaced.
  constexpr int kDraws = 20;
  for (int draw = 1;; ++draw) {
    try {
      return draw_scale_free(n, tail_exponent_mu, mean_degree, rng);
    } catch (const std::runtime_error&) {
      if (draw == kDraws) throw;
    }
  }
}

void write_edge_list(std::ostream& out, const std::vector<Edge>& edges) {
  for (const auto& [i, j] : edges) out << i << ' ' << j << '\n';
}

void write_edge_list(std::ostream& out, const Graph& graph) {
  write_edge_list(out, graph.edges());
}

}  // namespace adaptrade
