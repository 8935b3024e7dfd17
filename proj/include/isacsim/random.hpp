// SPDX-License-Identifier: Apache-2.0
//
// isacsim - geometry-based stochastic channel simulator for integrated sensing and communication
// Copyright (C) 2026 The isacsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include "constants.hpp"

namespace isac {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Order-sensitive hash of a key path, e.g. {drop_seed, link_id, purpose}.
inline constexpr std::uint64_t mix_keys(std::initializer_list<std::uint64_t> keys) {
  std::uint64_t h = 0x6A09E667F3BCC909ull;
  for (auto k : keys) h = splitmix64(h ^ splitmix64(k));
  return h;
}

// Purpose tags for substreams. Values are part of the determinism contract.
enum class Stream : std::uint64_t {
  placement = 1,
  los = 2,
  shadow_fading = 3,
  clusters = 4,
  rcs = 5,
  polarization = 6,
  background = 7,
  doppler = 8,
  field = 9,
  shared = 10,
  velocity = 11,
};

class Rng {
public:
  using engine_type = std::mt19937_64;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng keyed(std::initializer_list<std::uint64_t> keys) { return Rng(mix_keys(keys)); }

  // [0, 1)
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  double normal(double mean = 0.0, double stddev = 1.0) {
    return stddev == 0.0 ? mean : std::normal_distribution<double>(mean, stddev)(engine_);
  }
  // Shape/rate parameterisation: mean = shape / rate.
  double gamma(double shape, double rate) {
    return std::gamma_distribution<double>(shape, 1.0 / rate)(engine_);
  }
  bool bernoulli(double p) { return uniform() < p; }
  // Uniform on (-pi, pi].
  double phase() { return kPi - kTwoPi * uniform(); }

  engine_type& engine() { return engine_; }

private:
  engine_type engine_;
};

} // namespace isac
