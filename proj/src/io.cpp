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

#include "adaptrade/io.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "adaptrade/random.hpp"

namespace adaptrade {

ConfigError::ConfigError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

ReplicaError::ReplicaError(std::size_t replica, const std::string& message)
    : std::runtime_error("replica " + std::to_string(replica) + ": " + message),
      replica_(replica) {}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

template <typename T>
T parse_number(std::string_view text, std::string_view key) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc() || ptr != end)
    throw std::invalid_argument("malformed value '" + std::string(text) + "' for " +
                                std::string(key));
  return value;
}

struct Field {
  std::string_view name;
  std::function<void(SimConfig&, std::string_view)> set;
  std::function<std::string(const SimConfig&)> get;
};

template <typename T>
Field number_field(std::string_view name, T SimConfig::*member) {
  return {name,
          [member, name](SimConfig& c, std::string_view v) { c.*member = parse_number<T>(v, name); },
          [member](const SimConfig& c) {
            if constexpr (std::is_floating_point_v<T>)
              return format_real(c.*member);
            else
              return std::to_string(c.*member);
          }};
}

const std::vector<Field>& fields() {
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back(number_field("n_agents", &SimConfig::n_agents));
    f.push_back(number_field("j_phys", &SimConfig::j_phys));
    f.push_back(number_field("sigma_phys", &SimConfig::sigma_phys));
    f.push_back(number_field("epsilon", &SimConfig::epsilon));
    f.push_back(number_field("a_add", &SimConfig::a_add));
    f.push_back(number_field("r_remove", &SimConfig::r_remove));
    f.push_back(number_field("w_min", &SimConfig::w_min));
    f.push_back({"mode", [](SimConfig& c, std::string_view v) { c.mode = parse_mode(v); },
                 [](const SimConfig& c) { return std::string(to_string(c.mode)); }});
    f.push_back(number_field("wealth_sweeps_per_geometry_sweep",
                             &SimConfig::wealth_sweeps_per_geometry_sweep));
    f.push_back(number_field("total_geometry_sweeps", &SimConfig::total_geometry_sweeps));
    f.push_back(number_field("burn_in_geometry_sweeps", &SimConfig::burn_in_geometry_sweeps));
    f.push_back(number_field("record_every", &SimConfig::record_every));
    f.push_back(number_field("seed", &SimConfig::seed));
    f.push_back({"topology",
                 [](SimConfig& c, std::string_view v) { c.topology = parse_topology(v); },
                 [](const SimConfig& c) { return std::string(to_string(c.topology)); }});
    f.push_back(number_field("mean_degree", &SimConfig::mean_degree));
    f.push_back(number_field("topology_mu", &SimConfig::topology_mu));
    f.push_back(number_field("weight_mu", &SimConfig::weight_mu));
    f.push_back(number_field("wealth_bins_per_decade", &SimConfig::wealth_bins_per_decade));
    f.push_back(number_field("wealth_hist_lo", &SimConfig::wealth_hist_lo));
    f.push_back(number_field("wealth_hist_hi", &SimConfig::wealth_hist_hi));
    f.push_back(number_field("wealth_fit_lo", &SimConfig::wealth_fit_lo));
    f.push_back(number_field("wealth_fit_hi", &SimConfig::wealth_fit_hi));
    f.push_back(number_field("degree_bins_per_decade", &SimConfig::degree_bins_per_decade));
    f.push_back(number_field("degree_hist_lo", &SimConfig::degree_hist_lo));
    f.push_back(number_field("degree_hist_hi", &SimConfig::degree_hist_hi));
    f.push_back(number_field("degree_fit_lo", &SimConfig::degree_fit_lo));
    f.push_back(number_field("degree_fit_hi", &SimConfig::degree_fit_hi));
    return f;
  }();
  return table;
}

const Field* find_field(std::string_view key) {
  for (const auto& f : fields())
    if (f.name == key) return &f;
  return nullptr;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.close();
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

void set_config_value(SimConfig& config, std::string_view key, std::string_view value) {
  const Field* f = find_field(key);
  if (!f) throw std::invalid_argument("unknown key '" + std::string(key) + "'");
  f->set(config, value);
}

SimConfig parse_config(std::string_view text, const SimConfig& base) {
  SimConfig config = base;
  std::map<std::string_view, std::size_t> key_line;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError(line_no, "expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const Field* f = find_field(key);
    if (!f) throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
    if (key_line.count(f->name)) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
    key_line[f->name] = line_no;
    try {
      f->set(config, value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(line_no, e.what());
    }
  }

  const auto problems = violations(config);
  if (!problems.empty()) {
    std::size_t line = 0;
    for (auto key : problems.front().keys)
      if (auto it = key_line.find(key); it != key_line.end()) line = std::max(line, it->second);
    throw ConfigError(line, problems.front().message);
  }
  return config;
}

SimConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError(0, "cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string render_config(const SimConfig& config) {
  std::string out;
  for (const auto& f : fields()) {
    out += f.name;
    out += " = ";
    out += f.get(config);
    out += '\n';
  }
  return out;
}

std::string timeseries_csv(const std::vector<TimeseriesRecord>& timeseries) {
  std::string out = "sweep,links,y2_wealth,mean_wealth\n";
  for (const auto& r : timeseries)
    out += std::to_string(r.sweep) + ',' + std::to_string(r.links) + ',' +
           format_real(r.y2_wealth) + ',' + format_real(r.mean_wealth) + '\n';
  return out;
}

std::string histogram_csv(const Histogram& hist) {
  std::string out = "bin_lo,bin_hi,count,density\n";
  for (std::size_t k = 0; k < hist.n_bins(); ++k)
    out += format_real(hist.bin_lo(k)) + ',' + format_real(hist.bin_hi(k)) + ',' +
           std::to_string(hist.counts()[k]) + ',' + format_real(hist.density(k)) + '\n';
  return out;
}

namespace {

std::string fit_line(std::string_view name, const std::optional<TailFit>& fit,
                     const std::string& note) {
  std::string out(name);
  if (fit) {
    out += ' ' + format_real(fit->slope) + " +- " + format_real(fit->std_error) + " range " +
           format_real(fit->lo) + ' ' + format_real(fit->hi) + " bins " +
           std::to_string(fit->n_bins_used);
  } else {
    out += " n/a (" + note + ")";
  }
  return out + '\n';
}

std::string hist_line(std::string_view name, const Histogram& h) {
  return std::string(name) + " total " + std::to_string(h.total_count()) + " underflow " +
         std::to_string(h.underflow()) + " overflow " + std::to_string(h.overflow()) + '\n';
}

}  // namespace

std::string fits_text(const RunOutput& out) {
  std::string s = "# adaptrade " + out.code_version + '\n';
  s += fit_line("wealth_slope", out.wealth_fit, out.wealth_fit_note);
  s += fit_line("degree_slope", out.degree_fit, out.degree_fit_note);
  s += hist_line("wealth_hist", out.wealth_histogram);
  s += hist_line("degree_hist", out.degree_histogram);
  s += hist_line("degree_raw_hist", out.raw_degree_histogram);
  return s;
}

Histogram read_histogram_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || trim(line) != "bin_lo,bin_hi,count,density")
    throw std::invalid_argument("histogram csv: missing header bin_lo,bin_hi,count,density");
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  double inferred_total = -1;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    const auto text = trim(line);
    if (text.empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view rest = text;
    for (;;) {
      const auto comma = rest.find(',');
      cols.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    if (cols.size() != 4)
      throw std::invalid_argument("histogram csv: row " + std::to_string(row) + " needs 4 columns");
    const double lo = parse_number<double>(cols[0], "bin_lo");
    const double hi = parse_number<double>(cols[1], "bin_hi");
    const auto count = parse_number<std::uint64_t>(cols[2], "count");
    const double density = parse_number<double>(cols[3], "density");
    if (edges.empty()) edges.push_back(lo);
    else if (edges.back() != lo)
      throw std::invalid_argument("histogram csv: bins not contiguous at row " + std::to_string(row));
    edges.push_back(hi);
    counts.push_back(count);
    if (inferred_total < 0 && count > 0 && density > 0)
      inferred_total = std::round(static_cast<double>(count) / (density * (hi - lo)));
  }
  if (counts.empty()) throw std::invalid_argument("histogram csv: no bins");

  bool log_scheme = edges.front() > 0;
  if (log_scheme && edges.size() > 2) {
    const double ratio = edges[1] / edges[0];
    for (std::size_t k = 2; k < edges.size() && log_scheme; ++k)
      log_scheme = std::abs(edges[k] / edges[k - 1] / ratio - 1) < 1e-9;
  }
  std::uint64_t sum = 0;
  for (auto c : counts) sum += c;
  const auto total = inferred_total > static_cast<double>(sum)
                         ? static_cast<std::uint64_t>(inferred_total)
                         : sum;
  return Histogram::from_counts(std::move(edges),
                                log_scheme ? BinScheme::logarithmic : BinScheme::linear,
                                std::move(counts), total - sum, 0);
}

void write_run_output(const RunOutput& out, const std::filesystem::path& dir) {
  ensure_directory(dir);
  write_file(dir / "timeseries.csv", timeseries_csv(out.timeseries));
  write_file(dir / "wealth_hist.csv", histogram_csv(out.wealth_histogram));
  write_file(dir / "degree_hist.csv", histogram_csv(out.degree_histogram));
  write_file(dir / "degree_raw_hist.csv", histogram_csv(out.raw_degree_histogram));
  write_file(dir / "fits.txt", fits_text(out));
  write_file(dir / "config.txt", "# adaptrade " + out.code_version + '\n' + render_config(out.config));
  std::ostringstream edges;
  write_edge_list(edges, out.final_edges);
  write_file(dir / "edges.txt", edges.str());
}

ReplicaSummary summarize(const RunOutput& out) {
  ReplicaSummary s;
  if (!out.timeseries.empty()) {
    const double n = static_cast<double>(out.config.n_agents);
    for (const auto& r : out.timeseries) {
      s.y2_wealth += r.y2_wealth;
      s.mean_degree += 2.0 * static_cast<double>(r.links) / n;
    }
    s.y2_wealth /= static_cast<double>(out.timeseries.size());
    s.mean_degree /= static_cast<double>(out.timeseries.size());
  }
  if (out.wealth_fit) s.wealth_slope = out.wealth_fit->slope;
  if (out.degree_fit) s.degree_slope = out.degree_fit->slope;
  return s;
}

namespace {

Aggregate make_aggregate(std::string name, const std::vector<double>& xs) {
  Aggregate a;
  a.quantity = std::move(name);
  a.count = xs.size();
  if (xs.empty()) {
    a.mean = std::nan("");
    a.std_error = std::nan("");
    return a;
  }
  double sum = 0;
  for (double x : xs) sum += x;
  a.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0;
    for (double x : xs) ss += (x - a.mean) * (x - a.mean);
    a.std_error = std::sqrt(ss / static_cast<double>(xs.size() - 1) / static_cast<double>(xs.size()));
  }
  return a;
}

}  // namespace

std::vector<Aggregate> aggregate_replicas(const std::vector<RunOutput>& replicas) {
  std::vector<double> y2, degree, wslope, dslope;
  for (const auto& r : replicas) {
    const auto s = summarize(r);
    y2.push_back(s.y2_wealth);
    degree.push_back(s.mean_degree);
    if (s.wealth_slope) wslope.push_back(*s.wealth_slope);
    if (s.degree_slope) dslope.push_back(*s.degree_slope);
  }
  return {make_aggregate("y2_wealth", y2), make_aggregate("mean_degree", degree),
          make_aggregate("wealth_slope", wslope), make_aggregate("degree_slope", dslope)};
}

const Aggregate& EnsembleResult::aggregate(std::string_view quantity) const {
  for (const auto& a : aggregates)
    if (a.quantity == quantity) return a;
  throw std::out_of_range("no aggregate named " + std::string(quantity));
}

EnsembleResult ensemble_run(const SimConfig& config, std::size_t n_replicas,
                            std::size_t workers) {
  if (n_replicas < 1) throw std::invalid_argument("ensemble_run: need at least one replica");
  validate(config);
  workers = std::clamp<std::size_t>(workers, 1, n_replicas);

  std::vector<RunOutput> outputs(n_replicas);
  std::vector<std::exception_ptr> errors(n_replicas);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n_replicas; k = next++) {
      try {
        SimConfig replica = config;
        replica.seed = mix_seed(config.seed, k);
        outputs[k] = run_simulation(replica);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (std::size_t k = 0; k < n_replicas; ++k) {
    if (!errors[k]) continue;
    try {
      std::rethrow_exception(errors[k]);
    } catch (const std::exception& e) {
      throw ReplicaError(k, e.what());
    }
  }

  EnsembleResult result;
  result.aggregates = aggregate_replicas(outputs);
  result.replicas = std::move(outputs);
  return result;
}

namespace {

std::string optional_real(double x) { return std::isnan(x) ? std::string() : format_real(x); }

std::string replica_dir(std::string_view prefix, std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*s_%03zu", static_cast<int>(prefix.size()), prefix.data(), k);
  return buf;
}

}  // namespace

std::string ensemble_csv(const std::vector<Aggregate>& aggregates) {
  std::string out = "quantity,mean,stderr,count\n";
  for (const auto& a : aggregates)
    out += a.quantity + ',' + optional_real(a.mean) + ',' + optional_real(a.std_error) + ',' +
           std::to_string(a.count) + '\n';
  return out;
}

void write_ensemble_output(const EnsembleResult& result, const std::filesystem::path& dir) {
  ensure_directory(dir);
  for (std::size_t k = 0; k < result.replicas.size(); ++k)
    write_run_output(result.replicas[k], dir / replica_dir("replica", k));
  write_file(dir / "ensemble.csv", ensemble_csv(result.aggregates));
}

ScanParameter parse_scan_parameter(std::string_view text) {
  if (text == "j" || text == "j_phys") return ScanParameter::j_phys;
  if (text == "beta") return ScanParameter::beta;
  throw std::invalid_argument("unknown scan parameter '" + std::string(text) +
                              "' (expected j or beta)");
}

SimConfig scan_point_config(const SimConfig& config, ScanParameter parameter, double value) {
  SimConfig c = config;
  if (parameter == ScanParameter::j_phys)
    c.j_phys = value;
  else
    c.a_add = value * c.r_remove;
  return c;
}

std::vector<ScanPoint> run_scan(const SimConfig& config, ScanParameter parameter,
                                const std::vector<double>& values, std::size_t n_replicas,
                                std::size_t workers) {
  std::vector<ScanPoint> points;
  points.reserve(values.size());
  for (double v : values)
    points.push_back({v, ensemble_run(scan_point_config(config, parameter, v), n_replicas, workers)});
  return points;
}

std::string scan_csv(const std::vector<ScanPoint>& points) {
  std::string out =
      "value,y2_mean,y2_stderr,mean_degree_mean,mean_degree_stderr,"
      "wealth_slope_mean,wealth_slope_stderr,degree_slope_mean,degree_slope_stderr\n";
  for (const auto& p : points) {
    out += format_real(p.value);
    for (auto name : {"y2_wealth", "mean_degree", "wealth_slope", "degree_slope"}) {
      const auto& a = p.ensemble.aggregate(name);
      out += ',' + optional_real(a.mean) + ',' + optional_real(a.std_error);
    }
    out += '\n';
  }
  return out;
}

void write_scan_output(const std::vector<ScanPoint>& points, const std::filesystem::path& dir) {
  ensure_directory(dir);
  for (std::size_t k = 0; k < points.size(); ++k)
    write_ensemble_output(points[k].ensemble, dir / replica_dir("point", k));
  write_file(dir / "scan.csv", scan_csv(points));
}

}  // namespace adaptrade
