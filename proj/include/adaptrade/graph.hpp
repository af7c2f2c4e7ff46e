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

#ifndef ADAPTRADE_GRAPH_HPP_
#define ADAPTRADE_GRAPH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <utility>
#include <vector>

#include "adaptrade/random.hpp"

namespace adaptrade {

using NodeId = std::uint32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Compressed neighbor lists, neighbors of each node in ascending order.
struct Adjacency {
  std::vector<std::size_t> offsets;  // size n + 1
  std::vector<NodeId> neighbors;

  std::size_t n_nodes() const { return offsets.size() - 1; }
  std::size_t degree(NodeId i) const { return offsets[i + 1] - offsets[i]; }
};

// Undirected simple graph on nodes 0..n-1. Edges live in a hash set keyed
// by the ordered pair, so membership, insertion and removal are expected
// O(1); degrees are cached alongside.
class Graph {
 public:
  explicit Graph(std::size_t n_nodes = 0);
  Graph(const Graph& other);
  Graph(Graph&&) noexcept;
  Graph& operator=(const Graph& other);
  Graph& operator=(Graph&&) noexcept;
  ~Graph();

  std::size_t n_nodes() const { return degree_.size(); }
  std::size_t n_edges() const;
  std::size_t degree(NodeId i) const { return degree_[i]; }
  const std::vector<std::uint32_t>& degrees() const { return degree_; }

  bool has_edge(NodeId i, NodeId j) const;
  /// Returns false when the edge already exists. Throws on self-loops and
  /// out-of-range nodes.
  bool add_edge(NodeId i, NodeId j);
  /// Returns false when the edge is absent.
  bool remove_edge(NodeId i, NodeId j);
  void clear();

  bool is_complete() const;
  /// All edges as (i, j) with i < j, sorted lexicographically.
  std::vector<Edge> edges() const;
  Adjacency adjacency() const;

  static Graph complete(std::size_t n);

 private:
  void check_pair(NodeId i, NodeId j) const;

  struct EdgeSet;
  std::unique_ptr<EdgeSet> edges_;
  std::vector<std::uint32_t> degree_;
};

/// Link occupancy of the two-state add/remove chain at stationarity:
/// beta w_i w_j / (1 + beta (1 + r) w_i w_j).
double stationary_link_probability(double wi, double wj, double beta, double r);

/// G(n, p) with p = mean_degree / (n - 1). Requires 0 < mean_degree <= n - 1.
Graph sample_erdos_renyi(std::size_t n, double mean_degree, RandomStream& rng);

/// Uniform-ish simple d-regular graph via stub pairing plus rewiring.
Graph sample_regular(std::size_t n, std::size_t degree, RandomStream& rng);

/// Configuration-model graph whose degrees follow Prob(q) ~ q^(-1-mu).
Graph sample_scale_free(std::size_t n, double tail_exponent_mu,
                        double mean_degree, RandomStream& rng);

/// Simple graph realizing `degrees` exactly: random stub pairing, then
/// degree-preserving swaps to remove self-loops and multi-edges. Throws
/// std::runtime_error when no simple realization is found within the
/// attempt budget.
Graph configuration_model(const std::vector<std::uint32_t>& degrees,
                          RandomStream& rng, int max_attempts = 50);

/// One "i j" line per edge, 0-based, sorted lexicographically.
void write_edge_list(std::ostream& out, const std::vector<Edge>& edges);
void write_edge_list(std::ostream& out, const Graph& graph);

}  // namespace adaptrade

#endif  // ADAPTRADE_GRAPH_HPP_
