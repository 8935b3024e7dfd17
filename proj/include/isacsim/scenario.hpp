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
#include <functional>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "enums.hpp"
#include "eo.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace isac {

struct Layout {
  int n_sites = 7;
  double isd = 500.0;         // m
  double cell_radius = 0.0;   // m; 0 means isd / sqrt(3)
  double trp_height = 25.0;   // m

  double radius() const { return cell_radius > 0.0 ? cell_radius : isd / std::sqrt(3.0); }
};

struct ScenarioConfig {
  ScenarioId scenario = ScenarioId::uma_av;
  double carrier_frequency = 6e9; // Hz
  double bandwidth = 100e6;       // Hz
  SensingMode sensing_mode = SensingMode::trp_monostatic;
  double tx_power_dbm = 56.0;
  double noise_figure_db = 5.0;
  int num_uts = 30;
  double ut_height = 1.5;
  double ut_speed = 0.0; // m/s
  TargetType target_type = TargetType::uav_small;
  int num_targets = 1;
  double target_height = 200.0;
  double target_speed = 0.0; // m/s, random heading
  double min_dist_tx_target = 10.0;
  std::optional<double> min_dist_target_target; // defaults to min_dist_tx_target
  Layout layout;
  std::vector<EoDescriptor> eos;

  void validate() const {
    if (!(min_dist_tx_target > 0.0)) throw ConfigError("min_dist_tx_target must be positive");
    if (!(carrier_frequency >= 0.5e9 && carrier_frequency <= 100e9))
      throw ConfigError("carrier frequency must be within 0.5-100 GHz");
    if (!(bandwidth > 0.0)) throw ConfigError("bandwidth must be positive");
    if (num_uts < 0 || num_targets < 0) throw ConfigError("node counts must be non-negative");
    if (layout.n_sites != 1 && layout.n_sites != 7) throw ConfigError("layout supports 1 or 7 sites");
    if (!(layout.isd > 0.0)) throw ConfigError("inter-site distance must be positive");
    for (const auto& eo : eos) eo.validate();
  }
};

struct NodeState {
  Pose pose;
  Vector3 velocity;
};

struct TargetState {
  Pose pose;
  Vector3 velocity;
  TargetType type = TargetType::uav_small;
};

struct Drop {
  std::uint64_t seed = 0;
  std::vector<NodeState> trps;
  std::vector<NodeState> uts;
  std::vector<TargetState> targets;
  std::vector<EoDescriptor> eos;

  // Global node ids: TRPs first, then UTs.
  std::size_t node_count() const { return trps.size() + uts.size(); }
  bool is_trp(int id) const { return id >= 0 && std::size_t(id) < trps.size(); }
  const NodeState& node(int id) const {
    if (is_trp(id)) return trps[std::size_t(id)];
    return uts.at(std::size_t(id) - trps.size());
  }
};

struct SensingLink {
  int tx_node = 0;
  int rx_node = 0;
  std::optional<int> target;
  bool monostatic = true;

  bool operator==(const SensingLink&) const = default;
};

inline std::vector<Vector3> site_positions(const Layout& layout) {
  std::vector<Vector3> out{{0.0, 0.0, layout.trp_height}};
  if (layout.n_sites == 7)
    for (int k = 0; k < 6; ++k) {
      const double a = deg_to_rad(30.0 + 60.0 * k);
      out.push_back({layout.isd * std::cos(a), layout.isd * std::sin(a), layout.trp_height});
    }
  return out;
}

/// Point-in-hexagon test for the centre cell (flat top/bottom, circumradius r).
inline bool in_centre_cell(double x, double y, double r) {
  const double ax = std::abs(x), ay = std::abs(y);
  const double h = r * std::sqrt(3.0) / 2.0;
  if (ay > h || ax > r) return false;
  return std::sqrt(3.0) * ax + ay <= std::sqrt(3.0) * r;
}

inline Vector3 uniform_in_cell(Rng& rng, double r, double z) {
  for (;;) {
    const double x = rng.uniform(-r, r);
    const double y = rng.uniform(-r, r);
    if (in_centre_cell(x, y, r)) return {x, y, z};
  }
}

inline Vector3 random_heading_velocity(Rng& rng, double speed, double* heading_out = nullptr) {
  const double h = rng.uniform(-180.0, 180.0);
  if (heading_out) *heading_out = h;
  const double a = deg_to_rad(h);
  return {speed * std::cos(a), speed * std::sin(a), 0.0};
}

inline constexpr int kMaxPlacementRetries = 10000;

/// Node placement for one drop; a pure function of (cfg, seed).
inline Drop generate_drop(const ScenarioConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  Drop d;
  d.seed = seed;
  d.eos = cfg.eos;
  Rng rng = Rng::keyed({seed, std::uint64_t(Stream::placement)});
  for (const auto& p : site_positions(cfg.layout)) d.trps.push_back({{p, 0.0}, {}});
  const double r = cfg.layout.radius();
  for (int i = 0; i < cfg.num_uts; ++i) {
    NodeState ut;
    ut.pose.position = uniform_in_cell(rng, r, cfg.ut_height);
    ut.velocity = random_heading_velocity(rng, cfg.ut_speed, &ut.pose.heading);
    d.uts.push_back(ut);
  }
  const double min_tt = cfg.min_dist_target_target.value_or(cfg.min_dist_tx_target);
  for (int k = 0; k < cfg.num_targets; ++k) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxPlacementRetries && !placed; ++attempt) {
      const Vector3 pos = uniform_in_cell(rng, r, cfg.target_height);
      bool ok = true;
      for (const auto& n : d.trps) ok = ok && distance(n.pose.position, pos) >= cfg.min_dist_tx_target;
      for (const auto& n : d.uts) ok = ok && distance(n.pose.position, pos) >= cfg.min_dist_tx_target;
      for (const auto& t : d.targets) ok = ok && distance(t.pose.position, pos) >= min_tt;
      if (!ok) continue;
      TargetState t;
      t.type = cfg.target_type;
      t.pose.position = pos;
      t.velocity = random_heading_velocity(rng, cfg.target_speed, &t.pose.heading);
      d.targets.push_back(t);
      placed = true;
    }
    if (!placed)
      throw PlacementInfeasible("could not place target " + std::to_string(k) + " after " +
                                std::to_string(kMaxPlacementRetries) + " attempts");
  }
  return d;
}

/// Tx/Rx node pairs of a sensing mode. Bistatic pairs are unordered (tx < rx).
inline std::vector<SensingLink> candidate_links(const Drop& d, SensingMode mode, std::optional<int> target) {
  std::vector<SensingLink> out;
  const int n_trp = int(d.trps.size());
  const int n_ut = int(d.uts.size());
  switch (mode) {
    case SensingMode::trp_monostatic:
      for (int i = 0; i < n_trp; ++i) out.push_back({i, i, target, true});
      break;
    case SensingMode::trp_trp:
      for (int i = 0; i < n_trp; ++i)
        for (int j = i + 1; j < n_trp; ++j) out.push_back({i, j, target, false});
      break;
    case SensingMode::trp_ut:
      for (int i = 0; i < n_trp; ++i)
        for (int j = 0; j < n_ut; ++j) out.push_back({i, n_trp + j, target, false});
      break;
    case SensingMode::ut_ut:
      for (int i = 0; i < n_ut; ++i)
        for (int j = i + 1; j < n_ut; ++j) out.push_back({n_trp + i, n_trp + j, target, false});
      break;
    case SensingMode::ut_monostatic:
      for (int i = 0; i < n_ut; ++i) out.push_back({n_trp + i, n_trp + i, target, true});
      break;
  }
  return out;
}

/// The n links with the smallest coupling loss; ties go to the lower (tx, rx).
inline std::vector<SensingLink> select_sensing_pairs(std::vector<SensingLink> links, std::size_t n,
                                                     const std::function<double(const SensingLink&)>& coupling) {
  struct Scored {
    double loss;
    SensingLink link;
  };
  std::vector<Scored> scored;
  scored.reserve(links.size());
  for (const auto& l : links) scored.push_back({coupling(l), l});
  std::stable_sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
    if (a.loss != b.loss) return a.loss < b.loss;
    if (a.link.tx_node != b.link.tx_node) return a.link.tx_node < b.link.tx_node;
    return a.link.rx_node < b.link.rx_node;
  });
  std::vector<SensingLink> out;
  for (std::size_t i = 0; i < scored.size() && i < n; ++i) out.push_back(scored[i].link);
  return out;
}

} // namespace isac
