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

#ifndef ADAPTRADE_RANDOM_HPP_
#define ADAPTRADE_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>

namespace adaptrade {

/// 64-bit finalizer from SplitMix64.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replica `k` in an ensemble derived from `seed`.
///
/// Replica 0 keeps the base seed, so a one-replica ensemble reproduces a
/// plain run. For k > 0 the result is splitmix64(seed ^ splitmix64(k)).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k);

// Owns the engine for one simulation. Every consumer of randomness in a
// run draws from a single stream in a fixed order, which is what makes a
// (config, seed) pair reproduce bit-identical output.
class RandomStream {
 public:
  using engine_type = std::mt19937_64;

  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return unit_(engine_); }

  /// Uniform integer on [0, n). n must be positive.
  std::size_t index(std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(engine_);
  }

  double standard_normal() { return normal_(engine_); }

  engine_type& engine() { return engine_; }

 private:
  engine_type engine_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace adaptrade

#endif  // ADAPTRADE_RANDOM_HPP_
