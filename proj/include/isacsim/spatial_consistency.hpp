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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "enums.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace isac {

enum class FieldParam : std::uint64_t { los_state = 1, delays, powers, angles };

struct CorrelationDistances {
  double los_state = 50.0;
  double delays = 50.0;
  double powers = 50.0;
  double angles = 15.0;

  double of(FieldParam p) const {
    switch (p) {
      case FieldParam::los_state: return los_state;
      case FieldParam::delays: return delays;
      case FieldParam::powers: return powers;
      case FieldParam::angles: return angles;
    }
    return los_state;
  }
};

/// Axis-aligned box the field is defined over; queries outside are clamped onto it.
struct FieldRegion {
  Vector3 lo{-500.0, -500.0, 0.0};
  Vector3 hi{500.0, 500.0, 0.0};
};

/// Standard-normal random field with separable exponential correlation
/// exp(-|dx|/d - |dy|/d [- |dz|/d]). Lattice values come from first-order
/// autoregressive filtering of white noise along each axis; queries interpolate
/// the lattice and correct the variance loss of the interpolation.
class CorrelatedField {
public:
  static constexpr double kCellsPerDistance = 8.0;

  CorrelatedField(std::uint64_t seed, double d_corr, bool three_d, const FieldRegion& region)
      : d_corr_(d_corr), three_d_(three_d), origin_(region.lo) {
    if (!(d_corr > 0.0)) throw ConfigError("correlation distance must be positive");
    spacing_ = d_corr / kCellsPerDistance;
    rho_ = std::exp(-1.0 / kCellsPerDistance);
    nx_ = cells(region.hi.x - region.lo.x);
    ny_ = cells(region.hi.y - region.lo.y);
    nz_ = three_d ? cells(region.hi.z - region.lo.z) : 1;
    values_.resize(nx_ * ny_ * nz_);
    Rng rng(seed);
    for (auto& v : values_) v = rng.normal();
    const double innov = std::sqrt(1.0 - rho_ * rho_);
    for (std::size_t k = 0; k < nz_; ++k)
      for (std::size_t j = 0; j < ny_; ++j)
        for (std::size_t i = 1; i < nx_; ++i) at(i, j, k) = rho_ * at(i - 1, j, k) + innov * at(i, j, k);
    for (std::size_t k = 0; k < nz_; ++k)
      for (std::size_t j = 1; j < ny_; ++j)
        for (std::size_t i = 0; i < nx_; ++i) at(i, j, k) = rho_ * at(i, j - 1, k) + innov * at(i, j, k);
    for (std::size_t k = 1; k < nz_; ++k)
      for (std::size_t j = 0; j < ny_; ++j)
        for (std::size_t i = 0; i < nx_; ++i) at(i, j, k) = rho_ * at(i, j, k - 1) + innov * at(i, j, k);
  }

  double correlation_distance() const { return d_corr_; }
  bool three_d() const { return three_d_; }

  double sample(const Vector3& pos) const {
    const auto [i0, ux] = locate(pos.x - origin_.x, nx_);
    const auto [j0, uy] = locate(pos.y - origin_.y, ny_);
    const auto [k0, uz] = three_d_ ? locate(pos.z - origin_.z, nz_) : std::pair<std::size_t, double>{0, 0.0};
    const std::size_t i1 = std::min(i0 + 1, nx_ - 1);
    const std::size_t j1 = std::min(j0 + 1, ny_ - 1);
    const std::size_t k1 = std::min(k0 + 1, nz_ - 1);
    auto plane = [&](std::size_t k) {
      return (1 - ux) * (1 - uy) * at(i0, j0, k) + ux * (1 - uy) * at(i1, j0, k) + (1 - ux) * uy * at(i0, j1, k) +
             ux * uy * at(i1, j1, k);
    };
    const double v = three_d_ ? (1 - uz) * plane(k0) + uz * plane(k1) : plane(k0);
    double var = variance_factor(ux) * variance_factor(uy);
    if (three_d_) var *= variance_factor(uz);
    return v / std::sqrt(var);
  }

private:
  std::size_t cells(double extent) const {
    return static_cast<std::size_t>(std::floor(std::max(extent, 0.0) / spacing_)) + 2;
  }

  std::pair<std::size_t, double> locate(double offset, std::size_t n) const {
    const double g = std::clamp(offset / spacing_, 0.0, double(n - 1));
    const double f = std::floor(g);
    std::size_t i = static_cast<std::size_t>(f);
    if (i >= n - 1) return {n - 1, 0.0};
    return {i, g - f};
  }

  double variance_factor(double u) const { return (1 - u) * (1 - u) + u * u + 2 * u * (1 - u) * rho_; }

  double& at(std::size_t i, std::size_t j, std::size_t k) { return values_[(k * ny_ + j) * nx_ + i]; }
  double at(std::size_t i, std::size_t j, std::size_t k) const { return values_[(k * ny_ + j) * nx_ + i]; }

  double d_corr_;
  bool three_d_;
  Vector3 origin_;
  double spacing_ = 1.0;
  double rho_ = 0.0;
  std::size_t nx_ = 1, ny_ = 1, nz_ = 1;
  std::vector<double> values_;
};

inline double sample_field(const CorrelatedField& field, const Vector3& pos) { return field.sample(pos); }

/// Standard normal CDF; maps a field value onto a uniform variate.
inline double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

// ---------------------------------------------------------------------------
// Applicability rules
// ---------------------------------------------------------------------------

enum class LinkType { outdoor_los, outdoor_nlos, o2i };
enum class LinkRole { tx_spst, spst_rx, background, trp_trp };

struct LinkInfo {
  std::uint64_t link_id = 0;
  LinkType type = LinkType::outdoor_los;
  int floor = 0;
  ScenarioId scenario = ScenarioId::uma;
  SensingMode mode = SensingMode::trp_monostatic;
  LinkRole role = LinkRole::tx_spst;
  int anchor_node = 0;       // global node id of the fixed end the link is consistent around
  bool anchor_is_trp = true; // false for target/UT-UT links
};

namespace detail {

inline bool scenario_splits_trp_ut(ScenarioId s) {
  return s == ScenarioId::umi || s == ScenarioId::inh || s == ScenarioId::inf;
}

inline bool excluded_from_all(const LinkInfo& l) {
  if (!is_monostatic(l.mode)) return true;
  if (l.role == LinkRole::background) return true;
  return false;
}

} // namespace detail

/// Whether the random variables of two links are generated from shared fields.
inline bool applies(const LinkInfo& a, const LinkInfo& b) {
  if (a.link_id == b.link_id) return true;
  if (a.type != b.type || a.floor != b.floor || a.scenario != b.scenario) return false;
  if (detail::excluded_from_all(a) || detail::excluded_from_all(b)) return false;
  if ((a.role == LinkRole::trp_trp) != (b.role == LinkRole::trp_trp)) return false;
  if (a.anchor_is_trp != b.anchor_is_trp && detail::scenario_splits_trp_ut(a.scenario)) return false;
  // Different TRPs are never co-located; UT anchors correlate only with themselves.
  return a.anchor_node == b.anchor_node;
}

/// Key of the field bank entry a link draws from. Links for which applies()
/// holds share a key; excluded links get a key of their own.
inline std::uint64_t consistency_key(const LinkInfo& l) {
  if (detail::excluded_from_all(l)) return mix_keys({0xE0ull, l.link_id});
  return mix_keys({std::uint64_t(l.type), std::uint64_t(std::int64_t(l.floor)), std::uint64_t(l.scenario),
                   std::uint64_t(l.role == LinkRole::trp_trp), std::uint64_t(std::int64_t(l.anchor_node))});
}

/// Lazily built fields of one drop, keyed by parameter and consistency key.
class FieldBank {
public:
  FieldBank(std::uint64_t drop_seed, CorrelationDistances distances, FieldRegion region, bool three_d)
      : seed_(drop_seed), distances_(distances), region_(region), three_d_(three_d) {}

  const CorrelatedField& field(FieldParam p, std::uint64_t key) {
    auto it = fields_.find({p, key});
    if (it == fields_.end()) {
      const std::uint64_t s = mix_keys({seed_, std::uint64_t(Stream::field), std::uint64_t(p), key});
      it = fields_.emplace(std::pair{p, key}, std::make_unique<CorrelatedField>(s, distances_.of(p), three_d_, region_))
               .first;
    }
    return *it->second;
  }

  /// Uniform variate for a link parameter at a position.
  double uniform(FieldParam p, const LinkInfo& link, const Vector3& pos) {
    return normal_cdf(field(p, consistency_key(link)).sample(pos));
  }

  std::size_t size() const { return fields_.size(); }

private:
  std::uint64_t seed_;
  CorrelationDistances distances_;
  FieldRegion region_;
  bool three_d_;
  std::map<std::pair<FieldParam, std::uint64_t>, std::unique_ptr<CorrelatedField>> fields_;
};

} // namespace isac
