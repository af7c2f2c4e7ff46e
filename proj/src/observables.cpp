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

#include "adaptrade/observables.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

namespace adaptrade {

Histogram::Histogram(std::vector<double> edges, BinScheme scheme)
    : edges_(std::move(edges)), scheme_(scheme) {
  if (edges_.size() < 2) throw std::invalid_argument("Histogram: need at least two edges");
  for (std::size_t k = 1; k < edges_.size(); ++k)
    if (!(edges_[k] > edges_[k - 1]))
      throw std::invalid_argument("Histogram: edges must be strictly increasing");
  if (scheme_ == BinScheme::logarithmic && !(edges_.front() > 0))
    throw std::invalid_argument("Histogram: logarithmic edges must be positive");
  counts_.assign(edges_.size() - 1, 0);
}

Histogram Histogram::logarithmic(double lo, double hi, std::size_t bins_per_decade) {
  if (!(lo > 0) || !(hi > lo) || bins_per_decade < 1)
    throw std::invalid_argument("Histogram::logarithmic: need 0 < lo < hi, bins_per_decade >= 1");
  const double decades = std::log10(hi / lo);
  const auto n_bins = static_cast<std::size_t>(
      std::max(1.0, std::ceil(decades * static_cast<double>(bins_per_decade) - 1e-9)));
  const double log_lo = std::log10(lo);
  const double step = (std::log10(hi) - log_lo) / static_cast<double>(n_bins);
  std::vector<double> edges(n_bins + 1);
  for (std::size_t k = 0; k <= n_bins; ++k)
    edges[k] = std::pow(10.0, log_lo + static_cast<double>(k) * step);
  edges.front() = lo;
  edges.back() = hi;
  return Histogram(std::move(edges), BinScheme::logarithmic);
}

Histogram Histogram::linear(double lo, double hi, std::size_t bins) {
  if (!(hi > lo) || bins < 1)
    throw std::invalid_argument("Histogram::linear: need lo < hi, bins >= 1");
  std::vector<double> edges(bins + 1);
  for (std::size_t k = 0; k <= bins; ++k)
    edges[k] = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(bins);
  edges.back() = hi;
  return Histogram(std::move(edges), BinScheme::linear);
}

void Histogram::add(double value, std::uint64_t weight) {
  total_ += weight;
  if (value < edges_.front()) {
    underflow_ += weight;
    return;
  }
  if (!(value < edges_.back())) {  // also routes NaN to overflow
    overflow_ += weight;
    return;
  }
  auto it = std::upper_bound(edges_.begin(), edges_.end(), value);
  counts_[static_cast<std::size_t>(it - edges_.begin()) - 1] += weight;
}

void Histogram::merge(const Histogram& other) {
  if (other.edges_ != edges_) throw std::invalid_argument("Histogram::merge: edges differ");
  for (std::size_t k = 0; k < counts_.size(); ++k) counts_[k] += other.counts_[k];
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
  total_ += other.total_;
}

double Histogram::bin_center(std::size_t k) const {
  if (scheme_ == BinScheme::logarithmic) return std::sqrt(edges_[k] * edges_[k + 1]);
  return 0.5 * (edges_[k] + edges_[k + 1]);
}

double Histogram::density(std::size_t k) const {
  if (total_ == 0) return 0.0;
  return static_cast<double>(counts_[k]) / (static_cast<double>(total_) * bin_width(k));
}

Histogram Histogram::from_counts(std::vector<double> edges, BinScheme scheme,
                                 std::vector<std::uint64_t> counts, std::uint64_t underflow,
                                 std::uint64_t overflow) {
  Histogram h(std::move(edges), scheme);
  if (counts.size() != h.counts_.size())
    throw std::invalid_argument("Histogram::from_counts: count/edge size mismatch");
  h.counts_ = std::move(counts);
  h.underflow_ = underflow;
  h.overflow_ = overflow;
  h.total_ = std::accumulate(h.counts_.begin(), h.counts_.end(), underflow + overflow);
  return h;
}

Histogram log_histogram(ConstVectorRef values, std::size_t bins_per_decade, double lo,
                        double hi) {
  Histogram h = Histogram::logarithmic(lo, hi, bins_per_decade);
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0))
      throw std::invalid_argument("log_histogram: values must be positive");
    h.add(values[i]);
  }
  return h;
}

TailFit fit_power_law_tail(const Histogram& hist, double lo, double hi) {
  if (!(hi > lo)) throw FitError("fit_power_law_tail: need lo < hi");
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < hist.n_bins(); ++k) {
    const double c = hist.bin_center(k);
    if (c < lo || c > hi || hist.counts()[k] == 0 || !(c > 0)) continue;
    xs.push_back(std::log10(c));
    ys.push_back(std::log10(hist.density(k)));
  }
  const auto n = static_cast<int>(xs.size());
  if (n < 4)
    throw FitError("fit_power_law_tail: fewer than 4 non-empty bins in [" +
                   std::to_string(lo) + ", " + std::to_string(hi) + "]");

  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), n), y(ys.data(), n);
  const Eigen::VectorXd dx = x.array() - x.mean();
  const Eigen::VectorXd dy = y.array() - y.mean();
  const double sxx = dx.squaredNorm();
  if (!(sxx > 1e-300)) throw FitError("fit_power_law_tail: degenerate abscissa");
  const double b = dx.dot(dy) / sxx;
  const double ssr = (dy - b * dx).squaredNorm();
  const double s2 = n > 2 ? ssr / (n - 2) : 0.0;

  TailFit fit;
  fit.slope = -b;
  if (fit.slope == 0.0) fit.slope = 0.0;  // no negative zero in reports
  fit.std_error = std::sqrt(s2 / sxx);
  fit.lo = lo;
  fit.hi = hi;
  fit.n_bins_used = n;
  return fit;
}

double degree_participation_ratio(const Graph& graph) {
  const std::size_t links = graph.n_edges();
  if (links == 0) throw std::invalid_argument("degree_participation_ratio: edgeless graph");
  const double two_l = 2.0 * static_cast<double>(links);
  double sum = 0;
  for (auto q : graph.degrees()) sum += (q / two_l) * (q / two_l);
  return sum;
}

double poverty_fraction(ConstVectorRef weights, double delta) {
  if (!(delta > 0)) throw std::invalid_argument("poverty_fraction: delta must be > 0");
  if (weights.size() == 0) return 0.0;
  return static_cast<double>((weights.array() < delta).count()) /
         static_cast<double>(weights.size());
}

double autocorrelation_time(ConstVectorRef series) {
  const Eigen::Index n = series.size();
  if (n < 100) throw std::invalid_argument("autocorrelation_time: need at least 100 points");
  const Eigen::VectorXd d = series.array() - series.mean();
  const double c0 = d.squaredNorm() / static_cast<double>(n);
  if (!(c0 > 0)) return 1.0;
  double tau = 1.0;
  for (Eigen::Index k = 1; k < n; ++k) {
    const double ck = d.head(n - k).dot(d.tail(n - k)) / static_cast<double>(n);
    const double rho = ck / c0;
    if (rho < 0) break;
    tau += 2.0 * rho;
  }
  return tau;
}

double pearson_correlation(ConstVectorRef a, ConstVectorRef b) {
  if (a.size() != b.size()) throw std::invalid_argument("pearson_correlation: length mismatch");
  if (a.size() < 3) throw std::invalid_argument("pearson_correlation: need at least 3 points");
  const Eigen::VectorXd da = a.array() - a.mean();
  const Eigen::VectorXd db = b.array() - b.mean();
  const double va = da.squaredNorm(), vb = db.squaredNorm();
  if (!(va > 0) || !(vb > 0)) throw std::invalid_argument("pearson_correlation: zero variance");
  return std::clamp(da.dot(db) / std::sqrt(va * vb), -1.0, 1.0);
}

namespace {

Eigen::VectorXd ranks(ConstVectorRef v) {
  const Eigen::Index n = v.size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&v](Eigen::Index x, Eigen::Index y) { return v[x] < v[y]; });
  Eigen::VectorXd r(n);
  for (Eigen::Index lo = 0; lo < n;) {
    Eigen::Index hi = lo + 1;
    while (hi < n && v[order[hi]] == v[order[lo]]) ++hi;
    const double avg = 0.5 * static_cast<double>(lo + hi - 1);
    for (Eigen::Index k = lo; k < hi; ++k) r[order[k]] = avg;
    lo = hi;
  }
  return r;
}

}  // namespace

double spearman_correlation(ConstVectorRef a, ConstVectorRef b) {
  if (a.size() != b.size()) throw std::invalid_argument("spearman_correlation: length mismatch");
  return pearson_correlation(ranks(a), ranks(b));
}

std::vector<DegreeWealthRow> mean_wealth_by_degree(const Graph& graph, ConstVectorRef weights) {
  if (static_cast<std::size_t>(weights.size()) != graph.n_nodes())
    throw std::invalid_argument("mean_wealth_by_degree: size mismatch");
  std::map<std::uint32_t, std::pair<double, std::size_t>> groups;
  for (std::size_t i = 0; i < graph.n_nodes(); ++i) {
    auto& g = groups[graph.degrees()[i]];
    g.first += weights[static_cast<Eigen::Index>(i)];
    ++g.second;
  }
  std::vector<DegreeWealthRow> rows;
  rows.reserve(groups.size());
  for (const auto& [q, g] : groups)
    rows.push_back({q, g.first / static_cast<double>(g.second), g.second});
  return rows;
}

double isolated_fraction(const Graph& graph) {
  if (graph.n_nodes() == 0) return 0.0;
  const auto isolated = std::count(graph.degrees().begin(), graph.degrees().end(), 0u);
  return static_cast<double>(isolated) / static_cast<double>(graph.n_nodes());
}

}  // namespace adaptrade
