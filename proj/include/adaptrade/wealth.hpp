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

#ifndef ADAPTRADE_WEALTH_HPP_
#define ADAPTRADE_WEALTH_HPP_

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <cmath>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "adaptrade/graph.hpp"
#include "adaptrade/random.hpp"

namespace adaptrade {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

/// Positive wealth per agent with a cached total.
///
/// All mutation goes through modify(), which resynchronizes the total, so
/// total() always equals the sum of the entries.
template <typename Scalar = double>
class WealthState {
 public:
  using VectorType = Vector<Scalar>;

  WealthState() = default;

  explicit WealthState(VectorType wealth) : wealth_(std::move(wealth)) {
    if ((wealth_.array() <= Scalar(0)).any())
      throw std::invalid_argument("WealthState: wealth must be positive");
    total_ = wealth_.sum();
  }

  static WealthState constant(Eigen::Index n, Scalar value = Scalar(1)) {
    return WealthState(VectorType::Constant(n, value));
  }

  Eigen::Index size() const { return wealth_.size(); }
  const VectorType& wealth() const { return wealth_; }
  Scalar total() const { return total_; }
  Scalar mean() const { return total_ / static_cast<Scalar>(wealth_.size()); }

  template <typename F>
  void modify(F&& f) {
    std::forward<F>(f)(wealth_);
    total_ = wealth_.sum();
  }

 private:
  VectorType wealth_;
  Scalar total_{0};
};

// Trade flows of one sweep, frozen for a given graph. Agent j spreads a
// fraction j0 of its wealth evenly over its q_j partners, so
//   net_i = sum_j A_ij W_j / q_j - [q_i > 0] W_i       (per unit j0).
// Complete graphs take a closed form instead of the sparse product.
template <typename Scalar = double>
class TradeOperator {
 public:
  using VectorType = Vector<Scalar>;
  using Matrix = Eigen::SparseMatrix<Scalar, Eigen::RowMajor>;

  explicit TradeOperator(const Graph& graph)
      : n_(static_cast<Eigen::Index>(graph.n_nodes())), complete_(graph.is_complete()) {
    active_ = VectorType::Zero(n_);
    for (Eigen::Index i = 0; i < n_; ++i)
      if (graph.degree(static_cast<NodeId>(i)) > 0) active_[i] = Scalar(1);
    if (complete_) return;

    const Adjacency adj = graph.adjacency();
    std::vector<Eigen::Triplet<Scalar>> entries;
    entries.reserve(adj.neighbors.size());
    for (Eigen::Index i = 0; i < n_; ++i)
      for (auto k = adj.offsets[i]; k < adj.offsets[i + 1]; ++k) {
        const NodeId j = adj.neighbors[k];
        entries.emplace_back(static_cast<int>(i), static_cast<int>(j),
                             Scalar(1) / static_cast<Scalar>(adj.degree(j)));
      }
    share_.resize(n_, n_);
    share_.setFromTriplets(entries.begin(), entries.end());
  }

  Eigen::Index size() const { return n_; }
  bool complete() const { return complete_; }

  /// Writes the net flow per unit j0 into `out`.
  void net_flow(const VectorType& wealth, Scalar total, VectorType& out) const {
    if (complete_) {
      const Scalar inv = Scalar(1) / static_cast<Scalar>(n_ - 1);
      out = ((total - wealth.array()) * inv - wealth.array()).matrix();
    } else {
      out.noalias() = share_ * wealth;
      out -= active_.cwiseProduct(wealth);
    }
  }

  /// Dense J/j0 matrix, entry (i, j) = A_ij / q_j. For tests and small graphs.
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> dense_share() const {
    if (complete_) {
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> m =
          Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Constant(
              n_, n_, Scalar(1) / static_cast<Scalar>(n_ - 1));
      m.diagonal().setZero();
      return m;
    }
    return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(share_);
  }

 private:
  Eigen::Index n_;
  bool complete_;
  Matrix share_;
  VectorType active_;
};

/// n i.i.d. N(0, sigma0^2) draws. Always consumes exactly n standard
/// normals from the stream, also when sigma0 is zero.
template <typename Scalar = double>
Vector<Scalar> sample_noise(RandomStream& rng, Scalar sigma0, Eigen::Index n) {
  if (sigma0 < Scalar(0)) throw std::invalid_argument("sample_noise: sigma0 must be >= 0");
  Vector<Scalar> eta(n);
  for (Eigen::Index i = 0; i < n; ++i)
    eta[i] = sigma0 * static_cast<Scalar>(rng.standard_normal());
  return eta;
}

/// One synchronous wealth step:
///   W_i <- (W_i + j0 * net_i(W)) * exp(eta_i)
/// with every flow evaluated on the pre-sweep vector.
template <typename Scalar>
void wealth_update_sweep(WealthState<Scalar>& state, const TradeOperator<Scalar>& trade,
                         std::type_identity_t<Scalar> j0,
                         const std::type_identity_t<Vector<Scalar>>& noise) {
  if (trade.size() != state.size() || noise.size() != state.size())
    throw std::invalid_argument("wealth_update_sweep: size mismatch");
  if (!(j0 >= Scalar(0) && j0 < Scalar(1)))
    throw std::invalid_argument("wealth_update_sweep: j0 must lie in [0, 1)");
  Vector<Scalar> flow(state.size());
  trade.net_flow(state.wealth(), state.total(), flow);
  state.modify([&](Vector<Scalar>& w) {
    w = ((w + j0 * flow).array() * noise.array().exp()).matrix();
  });
}

template <typename Scalar>
void wealth_update_sweep(WealthState<Scalar>& state, const Graph& graph,
                         std::type_identity_t<Scalar> j0, std::type_identity_t<Scalar> sigma0,
                         RandomStream& rng) {
  if (static_cast<Eigen::Index>(graph.n_nodes()) != state.size())
    throw std::invalid_argument("wealth_update_sweep: size mismatch");
  const TradeOperator<Scalar> trade(graph);
  wealth_update_sweep(state, trade, j0, sample_noise<Scalar>(rng, sigma0, state.size()));
}

/// Raises every entry below w_min to w_min. w_min = 0 disables the floor.
template <typename Scalar>
void apply_wealth_floor(WealthState<Scalar>& state, std::type_identity_t<Scalar> w_min) {
  if (w_min < Scalar(0)) throw std::invalid_argument("apply_wealth_floor: w_min must be >= 0");
  if (w_min == Scalar(0) || state.wealth().minCoeff() >= w_min) return;
  state.modify([w_min](Vector<Scalar>& w) { w = w.cwiseMax(w_min); });
}

/// Rescales so the total equals the number of agents.
template <typename Scalar>
void normalize_wealth(WealthState<Scalar>& state) {
  if (!(state.total() > Scalar(0)))
    throw std::invalid_argument("normalize_wealth: total must be positive");
  const Scalar factor = static_cast<Scalar>(state.size()) / state.total();
  state.modify([factor](Vector<Scalar>& w) { w *= factor; });
}

/// w_i = W_i / mean(W). Invariant under a global rescaling of W.
template <typename Scalar>
Vector<Scalar> normalized_weights(const WealthState<Scalar>& state) {
  if (!(state.total() > Scalar(0)))
    throw std::invalid_argument("normalized_weights: total must be positive");
  return state.wealth() / state.mean();
}

}  // namespace adaptrade

#endif  // ADAPTRADE_WEALTH_HPP_
