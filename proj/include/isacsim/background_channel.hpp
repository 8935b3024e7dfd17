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

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "constants.hpp"
#include "enums.hpp"
#include "geometry.hpp"
#include "large_scale.hpp"
#include "path.hpp"
#include "random.hpp"
#include "small_scale.hpp"

namespace isac {

/// Shifted Gamma parameters of the reference-point distance and height.
/// alpha is the shape, beta the rate (mean alpha / beta), c the shift.
struct MrpParams {
  double alpha_d = 1.0;
  double beta_d = 1.0;
  double c_d = 0.0;
  double alpha_h = 1.0;
  double beta_h = 1.0;
  double c_h = 0.0;

  double mean_distance() const { return alpha_d / beta_d + c_d; }
  double mean_height() const { return alpha_h / beta_h + c_h; }
};

enum class MrpNode { trp, ut, uav };

inline MrpParams umi_trp_mrp() { return {6.1996, 0.1558, 15.2697, 12.0487, 2.3261, 0.0157}; }
inline MrpParams umi_ut_mrp() { return {10.0220, 1.2522, 11.0040, 3.0487, 1.9128, 0.1785}; }

/// Aerial row; the expressions depend on the UAV height h in metres.
inline MrpParams umi_uav_mrp(double h) {
  return {0.0156 * h + 5.5399, 40.4517 / (h + 254.6318), 0.0140 * h + 15.1184,
          0.0123 * h + 11.9569, 17.8047 / (h - 0.2202), 0.0532 * h - 0.0120};
}

inline MrpParams mrp_params(MrpNode node, double height) {
  switch (node) {
    case MrpNode::trp: return umi_trp_mrp();
    case MrpNode::ut: return umi_ut_mrp();
    case MrpNode::uav: return umi_uav_mrp(height);
  }
  return umi_trp_mrp();
}

struct ReferencePoint {
  Vector3 position;
  double distance = 0.0; // horizontal, m
  double height = 0.0;   // m
  double azimuth = 0.0;  // deg, bearing from the node
};

/// n reference points around a node sharing one distance and one height draw,
/// evenly spread in azimuth from a uniform start angle.
inline std::vector<ReferencePoint> sample_reference_points(const MrpParams& params, Rng& rng,
                                                           const Vector3& node = {}, int n = 3) {
  if (!(params.alpha_d > 0.0 && params.beta_d > 0.0 && params.alpha_h > 0.0 && params.beta_h > 0.0))
    throw ConfigError("reference-point gamma parameters must be positive");
  const double d = rng.gamma(params.alpha_d, params.beta_d) + params.c_d;
  const double h = rng.gamma(params.alpha_h, params.beta_h) + params.c_h;
  const double theta0 = rng.uniform(0.0, 360.0);
  std::vector<ReferencePoint> out;
  out.reserve(std::size_t(n));
  for (int k = 0; k < n; ++k) {
    const double az = wrap_azimuth(theta0 + 360.0 * k / n);
    const double a = deg_to_rad(az);
    out.push_back({{node.x + d * std::cos(a), node.y + d * std::sin(a), h}, d, h, az});
  }
  return out;
}

enum class Trip { round_trip, one_way };

struct BackgroundConfig {
  Trip trip = Trip::round_trip;
  int n_reference_points = 3;
};

struct MonostaticBackground {
  std::vector<ReferencePoint> points;
  std::vector<ClusterSet> clusters;
  PathSet paths;
};

/// Monostatic background as equal-power sub-channels from the node to each
/// reference point. The node sees the same direction on departure and arrival.
inline MonostaticBackground monostatic_background(const Vector3& node, const MrpParams& params, const LspSet& lsp,
                                                  Rng& rng, double frequency_hz, const PropagationModel& model,
                                                  const BackgroundConfig& cfg = {}) {
  MonostaticBackground out;
  out.points = sample_reference_points(params, rng, node, cfg.n_reference_points);
  const double share = 1.0 / double(out.points.size());
  const double factor = cfg.trip == Trip::round_trip ? 2.0 : 1.0;
  for (std::size_t k = 0; k < out.points.size(); ++k) {
    const Vector3 rp = out.points[k].position;
    SegmentGeometry g = SegmentGeometry::between(node, rp);
    if (g.d3d == 0.0) throw DegenerateGeometry("reference point coincides with the node");
    const double p_los = los_probability(g, model);
    const bool los = rng.uniform() < p_los;
    const SegmentGeometry trip = g.scaled(factor);
    const double sf = rng.normal(0.0, shadow_fading_std(g, model, los));
    const double gain = -(pathloss_segment(trip, frequency_hz, model, los) + sf);
    const SphericalAngle dep = direction_angle(rp - node);
    const SphericalAngle arr = direction_angle(node - rp);
    ClusterSet cs = generate_clusters(lsp, rng, los, dep, arr);
    for (std::size_t i = 0; i < cs.rays.size(); ++i) {
      const Ray& r = cs.rays[i];
      Path p;
      p.kind = PathKind::background;
      p.delay_s = factor * (g.d3d / kSpeedOfLight + r.delay_s);
      p.weight = share * r.power;
      p.gain_db = gain;
      p.departure = r.departure;
      p.arrival = r.departure;
      p.pol = r.pol;
      p.spst = int(k);
      p.ray1 = int(i);
      p.deterministic = r.is_los();
      out.paths.push_back(p);
    }
    out.clusters.push_back(std::move(cs));
  }
  return out;
}

/// Plain GBSM between two separated nodes with absolute delays.
inline PathSet bistatic_background(const Vector3& tx, const Vector3& rx, const LspSet& lsp, bool los, double gain_db,
                                   Rng& rng, ClusterSet* clusters_out = nullptr) {
  const double d = distance(tx, rx);
  if (d == 0.0) throw DegenerateGeometry("bistatic background needs separated nodes");
  const SphericalAngle dep = direction_angle(rx - tx);
  const SphericalAngle arr = direction_angle(tx - rx);
  ClusterSet cs = generate_clusters(lsp, rng, los, dep, arr);
  PathSet out;
  out.reserve(cs.rays.size());
  for (std::size_t i = 0; i < cs.rays.size(); ++i) {
    const Ray& r = cs.rays[i];
    Path p;
    p.kind = PathKind::background;
    p.delay_s = d / kSpeedOfLight + r.delay_s;
    p.weight = r.power;
    p.gain_db = gain_db;
    p.departure = r.departure;
    p.arrival = r.arrival;
    p.pol = r.pol;
    p.ray1 = int(i);
    p.deterministic = r.is_los();
    out.push_back(p);
  }
  if (clusters_out) *clusters_out = std::move(cs);
  return out;
}

} // namespace isac
