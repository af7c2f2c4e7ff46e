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

#ifndef ADAPTRADE_OBSERVABLES_HPP_
#define ADAPTRADE_OBSERVABLES_HPP_

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "adaptrade/graph.hpp"

namespace adaptrade {

using ConstVectorRef = Eigen::Ref<const Eigen::VectorXd>;

enum class BinScheme { linear, logarithmic };

// Binned empirical distribution. Out-of-range samples are kept as
// underflow/overflow so counts always add up to total_count().
class Histogram {
 public:
  Histogram() = default;
  Histogram(std::vector<double> edges, BinScheme scheme);

  /// Edges lo * (hi/lo)^(k/B) with B = ceil(bins_per_decade * log10(hi/lo)).
  static Histogram logarithmic(double lo, double hi, std::size_t bins_per_decade);
  static Histogram linear(double lo, double hi, std::size_t bins);

  /// Values below the first edge go to underflow, values >= the last edge
  /// to overflow.
  void add(double value, std::uint64_t weight = 1);
  void merge(const Histogram& other);

  std::size_t n_bins() const { return counts_.size(); }
  const std::vector<double>& edges() const { return edges_; }
  const std::vector<std::uint64_t>& counts() const { return counts_; }
  std::uint64_t underflow() const { return underflow_; }
  std::uint64_t overflow() const { return overflow_; }
  std::uint64_t total_count() const { return total_; }
  BinScheme scheme() const { return scheme_; }

  double bin_lo(std::size_t k) const { return edges_[k]; }
  double bin_hi(std::size_t k) const { return edges_[k + 1]; }
  double bin_width(std::size_t k) const { return edges_[k + 1] - edges_[k]; }
  /// Geometric center for log bins, arithmetic for linear ones.
  double bin_center(std::size_t k) const;
  /// count_k / (total_count * width_k); zero for an empty histogram.
  double density(std::size_t k) const;

  /// Restores a histogram from stored counts and flow counts.
  static Histogram from_counts(std::vector<double> edges, BinScheme scheme,
                               std::vector<std::uint64_t> counts, std::uint64_t underflow,
                               std::uint64_t overflow);

  bool operator==(const Histogram&) const = default;

 private:
  std::vector<double> edges_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
  std::uint64_t total_ = 0;
  BinScheme scheme_ = BinScheme::linear;
};

/// Log-binned histogram of strictly positive values. Throws
/// std::invalid_argument on any value <= 0.
Histogram log_histogram(ConstVectorRef values, std::size_t bins_per_decade, double lo,
                        double hi);

/// Power-law tail estimate. `slope` is the positive density exponent:
/// density ~ x^(-slope).
struct TailFit {
  double slope = 0;
  double std_error = 0;
  double lo = 0;
  double hi = 0;
  int n_bins_used = 0;

  bool operator==(const TailFit&) const = default;
};

class FitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Least-squares line through (log10 center, log10 density) of the
/// non-empty bins whose center lies in [lo, hi]. Throws FitError with fewer
/// than four such bins or a degenerate abscissa.
TailFit fit_power_law_tail(const Histogram& hist, double lo, double hi);

/// Y2 = sum (w_i / N)^2. Lies in [1/N, 1] for weights of mean one.
template <typename Derived>
typename Derived::Scalar inverse_participation_ratio(const Eigen::MatrixBase<Derived>& w) {
  if (w.size() == 0) throw std::invalid_argument("inverse_participation_ratio: empty input");
  using Scalar = typename Derived::Scalar;
  return (w / static_cast<Scalar>(w.size())).squaredNorm();
}

/// Y2 of the normalized degrees Q_i = N q_i / 2L.
double degree_participation_ratio(const Graph& graph);

/// Fraction of weights strictly below `delta`.
double poverty_fraction(ConstVectorRef weights, double delta = 0.01);

/// Integrated autocorrelation time 1 + 2 sum_k rho(k), summed until the
/// first negative rho(k). Constant series give 1.
double autocorrelation_time(ConstVectorRef series);

double pearson_correlation(ConstVectorRef a, ConstVectorRef b);
/// Pearson correlation of ranks, ties sharing their average rank.
double spearman_correlation(ConstVectorRef a, ConstVectorRef b);

struct DegreeWealthRow {
  std::uint32_t degree;
  double mean_weight;
  std::size_t count;
};

/// Mean normalized weight of the nodes of each occupied degree, ascending.
std::vector<DegreeWealthRow> mean_wealth_by_degree(const Graph& graph, ConstVectorRef weights);

/// Fraction of nodes with no links.
double isolated_fraction(const Graph& graph);

}  // namespace adaptrade

#endif  // ADAPTRADE_OBSERVABLES_HPP_
