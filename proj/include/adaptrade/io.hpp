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

#ifndef ADAPTRADE_IO_HPP_
#define ADAPTRADE_IO_HPP_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "adaptrade/config.hpp"
#include "adaptrade/dynamics.hpp"
#include "adaptrade/observables.hpp"

namespace adaptrade {

// Configuration problem. line() is the 1-based line of the offending key,
// or 0 when the problem is not tied to a line (flags, defaults).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Parses "key = value" lines ('#' starts a comment) on top of `base`.
/// Unknown keys, repeated keys, malformed values and invariant violations
/// throw ConfigError.
SimConfig parse_config(std::string_view text, const SimConfig& base = {});
SimConfig load_config(const std::filesystem::path& path);

/// Assigns one key. Throws std::invalid_argument on unknown keys or values
/// that do not parse; does not validate cross-field invariants.
void set_config_value(SimConfig& config, std::string_view key, std::string_view value);

/// Every key in a fixed order, reals at 17 significant digits, so that
/// parse_config(render_config(c)) == c.
std::string render_config(const SimConfig& config);

/// "%.17g".
std::string format_real(double x);

std::string timeseries_csv(const std::vector<TimeseriesRecord>& timeseries);
std::string histogram_csv(const Histogram& hist);
std::string fits_text(const RunOutput& out);

/// Reads the bin_lo,bin_hi,count,density format back. The scheme is
/// logarithmic when consecutive edges share one ratio. Samples outside the
/// stored bins are restored as underflow so densities are preserved.
Histogram read_histogram_csv(std::istream& in);

/// Writes timeseries.csv, wealth_hist.csv, degree_hist.csv,
/// degree_raw_hist.csv, fits.txt, config.txt and edges.txt into `dir`
/// (created if missing). Throws std::runtime_error naming the path on
/// I/O failure.
void write_run_output(const RunOutput& out, const std::filesystem::path& dir);

struct ReplicaSummary {
  double y2_wealth = 0;    // time average over the recorded series
  double mean_degree = 0;  // time average of 2L/N
  std::optional<double> wealth_slope;
  std::optional<double> degree_slope;
};

ReplicaSummary summarize(const RunOutput& out);

struct Aggregate {
  std::string quantity;
  double mean = 0;
  double std_error = 0;
  std::size_t count = 0;
};

struct EnsembleResult {
  std::vector<RunOutput> replicas;
  std::vector<Aggregate> aggregates;  // y2_wealth, mean_degree, wealth_slope, degree_slope

  const Aggregate& aggregate(std::string_view quantity) const;
};

class ReplicaError : public std::runtime_error {
 public:
  ReplicaError(std::size_t replica, const std::string& message);
  std::size_t replica() const { return replica_; }

 private:
  std::size_t replica_;
};

/// Runs replicas k = 0..n-1 with seed mix_seed(config.seed, k) on up to
/// `workers` threads. Aggregation happens after all replicas finish, in
/// replica order, so the result does not depend on `workers`.
EnsembleResult ensemble_run(const SimConfig& config, std::size_t n_replicas,
                            std::size_t workers);

std::vector<Aggregate> aggregate_replicas(const std::vector<RunOutput>& replicas);
std::string ensemble_csv(const std::vector<Aggregate>& aggregates);
/// replica_000/, replica_001/, ... plus ensemble.csv.
void write_ensemble_output(const EnsembleResult& result, const std::filesystem::path& dir);

enum class ScanParameter { j_phys, beta };
ScanParameter parse_scan_parameter(std::string_view text);

struct ScanPoint {
  double value;
  EnsembleResult ensemble;
};

/// One ensemble per grid value. beta is applied as a_add = beta * r_remove.
/// Every point reuses the base seed (common random numbers).
std::vector<ScanPoint> run_scan(const SimConfig& config, ScanParameter parameter,
                                const std::vector<double>& values, std::size_t n_replicas,
                                std::size_t workers);
SimConfig scan_point_config(const SimConfig& config, ScanParameter parameter, double value);
std::string scan_csv(const std::vector<ScanPoint>& points);
/// point_000/ (an ensemble directory per value) plus scan.csv.
void write_scan_output(const std::vector<ScanPoint>& points, const std::filesystem::path& dir);

}  // namespace adaptrade

#endif  // ADAPTRADE_IO_HPP_
