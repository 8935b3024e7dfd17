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
#include <numeric>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "doppler.hpp"
#include "geometry.hpp"
#include "large_scale.hpp"
#include "path.hpp"
#include "random.hpp"
#include "rcs.hpp"
#include "small_scale.hpp"

namespace isac {

enum class ConcatMode { full_product, one_by_one };
enum class Normalization { none, cluster_count, cluster_index };

inline std::optional<ConcatMode> parse_concat_mode(std::string_view s) {
  if (s == "full_product") return ConcatMode::full_product;
  if (s == "one_by_one") return ConcatMode::one_by_one;
  return std::nullopt;
}

inline std::optional<Normalization> parse_normalization(std::string_view s) {
  if (s == "none") return Normalization::none;
  if (s == "cluster_count") return Normalization::cluster_count;
  if (s == "cluster_index") return Normalization::cluster_index;
  return std::nullopt;
}

struct ConcatConfig {
  ConcatMode mode = ConcatMode::full_product;
  double drop_threshold_db = 25.0;
  Normalization normalization = Normalization::none;
  bool angle_filter = false;
  bool clusters = true; // false keeps only the LoS rays of each segment
};

/// One realized link segment: small-scale rays plus its geometric delay and large-scale gain.
struct SegmentChannel {
  ClusterSet clusters;
  double delay_s = 0.0;
  double gain_db = 0.0;
};

/// Everything the concatenation needs to know about the scattering point.
struct ScatterContext {
  const RcsModel* rcs = nullptr;
  Pose target_pose;
  std::optional<FaceId> face;
  double sigma_s = 1.0; // linear fluctuation draw
  double aperture_db = 0.0;
  int target = 0;
  int spst = 0;
  double wavelength = 0.0; // when set, direct paths carry their geometric phase
};

namespace detail {

inline int cluster_count(const ClusterSet& cs) {
  return static_cast<int>(cs.powers.size()) + (cs.los ? 1 : 0);
}

inline double cluster_ordinal(const Ray& r) { return r.is_los() ? 1.0 : r.cluster + 1.0; }

struct Candidate {
  double weight;
  int r1;
  int r2;
};

inline std::vector<std::pair<int, int>> ray_pairs(const ClusterSet& a, const ClusterSet& b, ConcatMode mode) {
  std::vector<std::pair<int, int>> out;
  const int na = static_cast<int>(a.rays.size());
  const int nb = static_cast<int>(b.rays.size());
  if (mode == ConcatMode::full_product) {
    out.reserve(std::size_t(na) * std::size_t(nb));
    for (int i = 0; i < na; ++i)
      for (int j = 0; j < nb; ++j) out.emplace_back(i, j);
    return out;
  }
  auto rank = [](const ClusterSet& cs) {
    std::vector<int> idx(cs.rays.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) { return cs.rays[x].power > cs.rays[y].power; });
    return idx;
  };
  const auto ia = rank(a);
  const auto ib = rank(b);
  const std::size_t n = std::min(ia.size(), ib.size());
  out.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.emplace_back(ia[k], ib[k]);
  return out;
}

inline std::vector<Candidate> candidates(const SegmentChannel& s1, const SegmentChannel& s2,
                                         const ScatterContext& ctx, const ConcatConfig& cfg) {
  const RcsModel& rcs = *ctx.rcs;
  const auto pairs = ray_pairs(s1.clusters, s2.clusters, cfg.mode);
  const double n12 = double(cluster_count(s1.clusters)) * double(cluster_count(s2.clusters));

  std::vector<SphericalAngle> inc(s1.clusters.rays.size());
  std::vector<SphericalAngle> sca(s2.clusters.rays.size());
  for (std::size_t i = 0; i < inc.size(); ++i) inc[i] = gcs_to_lcs(s1.clusters.rays[i].arrival, ctx.target_pose);
  for (std::size_t j = 0; j < sca.size(); ++j) sca[j] = gcs_to_lcs(s2.clusters.rays[j].departure, ctx.target_pose);

  // Angle-independent targets only need sin(beta/2) = |a - b| / 2 of the unit vectors.
  std::vector<Vector3> inc_u, sca_u;
  if (!rcs.angle_dependent) {
    for (const auto& a : inc) inc_u.push_back(spherical_unit_vector(a));
    for (const auto& a : sca) sca_u.push_back(spherical_unit_vector(a));
  }

  std::vector<Candidate> out;
  out.reserve(pairs.size());
  for (const auto& [i, j] : pairs) {
    const Ray& r1 = s1.clusters.rays[i];
    const Ray& r2 = s2.clusters.rays[j];
    if (cfg.angle_filter && rcs.angle_dependent) {
      const FaceParams& f = active_face(rcs, bisector_and_beta(inc[i], sca[j]).bisector, ctx.face);
      if (!f.covers(inc[i]) && !f.covers(sca[j])) continue;
    }
    double norm = 1.0;
    if (cfg.normalization == Normalization::cluster_count) norm = n12;
    if (cfg.normalization == Normalization::cluster_index) norm = cluster_ordinal(r1) * cluster_ordinal(r2);
    double sigma_db = 0.0;
    if (rcs.angle_dependent) {
      sigma_db = sigma_md_bistatic_db(rcs, inc[i], sca[j], ctx.face);
    } else {
      const double half = std::min((inc_u[i] - sca_u[j]).norm() / 2.0, 1.0);
      sigma_db = std::max(rcs.sigma_m_db - 3.0 * half, rcs.forward_scattering_db);
    }
    const double sigma = db_to_linear(sigma_db);
    out.push_back({r1.power * r2.power / norm * sigma * ctx.sigma_s, i, j});
  }
  return out;
}

inline Path materialize(const SegmentChannel& s1, const SegmentChannel& s2, const ScatterContext& ctx,
                        const Candidate& c) {
  const Ray& r1 = s1.clusters.rays[c.r1];
  const Ray& r2 = s2.clusters.rays[c.r2];
  Path p;
  p.kind = r1.is_los() && r2.is_los() ? PathKind::direct : PathKind::target;
  p.delay_s = s1.delay_s + r1.delay_s + s2.delay_s + r2.delay_s;
  p.weight = c.weight;
  p.gain_db = s1.gain_db + s2.gain_db + ctx.aperture_db;
  p.departure = r1.departure;
  p.incident = r1.arrival;
  p.scattered = r2.departure;
  p.arrival = r2.arrival;
  p.target = ctx.target;
  p.spst = ctx.spst;
  p.ray1 = c.r1;
  p.ray2 = c.r2;
  p.deterministic = p.kind == PathKind::direct;
  if (p.deterministic && ctx.wavelength > 0.0)
    p.phase = std::remainder(-kTwoPi * p.delay_s * kSpeedOfLight / ctx.wavelength, kTwoPi);
  return p;
}

} // namespace detail

/// Concatenates two segments through one scattering point. No paths are dropped
/// and the polarization is left at identity; see apply_polarization.
inline PathSet concatenate(const SegmentChannel& seg1, const SegmentChannel& seg2, const ScatterContext& ctx,
                           const ConcatConfig& cfg) {
  const auto cands = detail::candidates(seg1, seg2, ctx, cfg);
  PathSet out;
  out.reserve(cands.size());
  for (const auto& c : cands) out.push_back(detail::materialize(seg1, seg2, ctx, c));
  return out;
}

/// Composes Rx-segment * CPM * Tx-segment polarization for every path, drawing
/// one CPM per path from the target's XPR statistics.
inline void apply_polarization(PathSet& paths, const SegmentChannel& seg1, const SegmentChannel& seg2,
                               const RcsModel& rcs, Rng& rng) {
  for (auto& p : paths) {
    p.cpm = sample_cpm(rng, sample_xpr(rng, rcs));
    p.pol = seg2.clusters.rays[p.ray2].pol * p.cpm * seg1.clusters.rays[p.ray1].pol;
  }
}

// ---------------------------------------------------------------------------
// Full target channel of one link
// ---------------------------------------------------------------------------

struct TargetLink {
  Vector3 tx;
  Vector3 rx;
  bool monostatic = false;
  Pose target_pose;
  int target = 0;
  const RcsModel* rcs = nullptr;
  std::vector<Spst> spsts;
  LosState los;
  double seg1_gain_db = 0.0; // -(PL + SF) of Tx-target
  double seg2_gain_db = 0.0; // -(PL + SF) of target-Rx
  double frequency_hz = 6e9;
  LspSet lsp_los = default_lsp(true);
  LspSet lsp_nlos = default_lsp(false);
};

struct SpstChannel {
  Vector3 anchor;
  SegmentChannel seg1;
  SegmentChannel seg2;
  double sigma_s = 1.0;
};

struct TargetChannel {
  std::vector<SpstChannel> spsts;
  PathSet paths;
};

namespace detail {

inline ClusterSet reversed(const ClusterSet& cs) {
  ClusterSet r = cs;
  for (auto& ray : r.rays) std::swap(ray.departure, ray.arrival);
  return r;
}

inline ClusterSet segment_clusters(const TargetLink& link, bool los, const SphericalAngle& dep,
                                   const SphericalAngle& arr, const ConcatConfig& cfg, Rng& rng) {
  if (!cfg.clusters) {
    if (los) return los_only_segment(dep, arr);
    return ClusterSet{};
  }
  return generate_clusters(los ? link.lsp_los : link.lsp_nlos, rng, los, dep, arr);
}

} // namespace detail

/// Builds the segments of every scattering point and the concatenated, weak-path
/// dropped path set (global threshold across the target's scattering points).
/// Monostatic links reuse the outbound clusters reversed for the return segment.
inline TargetChannel build_target_channel(const TargetLink& link, const ConcatConfig& cfg, std::uint64_t seed) {
  if (!link.rcs) throw ConfigError("target link without rcs model");
  TargetChannel out;
  const double aperture = aperture_db(link.frequency_hz);
  std::vector<std::vector<detail::Candidate>> cands;
  double best = 0.0;
  for (std::size_t s = 0; s < link.spsts.size(); ++s) {
    SpstChannel ch;
    ch.anchor = spst_position(link.target_pose, link.spsts[s]);
    const double d1 = distance(link.tx, ch.anchor);
    const double d2 = distance(ch.anchor, link.rx);
    if (d1 == 0.0 || d2 == 0.0) throw DegenerateGeometry("scattering point coincides with a node");
    Rng rng = Rng::keyed({seed, std::uint64_t(Stream::clusters), std::uint64_t(link.target), s});
    const SphericalAngle dep1 = direction_angle(ch.anchor - link.tx);
    const SphericalAngle arr1 = direction_angle(link.tx - ch.anchor);
    ch.seg1.clusters = detail::segment_clusters(link, link.los.tx_target_los, dep1, arr1, cfg, rng);
    ch.seg1.delay_s = d1 / kSpeedOfLight;
    ch.seg1.gain_db = link.seg1_gain_db;
    if (link.monostatic) {
      ch.seg2.clusters = detail::reversed(ch.seg1.clusters);
    } else {
      const SphericalAngle dep2 = direction_angle(link.rx - ch.anchor);
      const SphericalAngle arr2 = direction_angle(ch.anchor - link.rx);
      ch.seg2.clusters = detail::segment_clusters(link, link.los.target_rx_los, dep2, arr2, cfg, rng);
    }
    ch.seg2.delay_s = d2 / kSpeedOfLight;
    ch.seg2.gain_db = link.seg2_gain_db;

    Rng rcs_rng = Rng::keyed({seed, std::uint64_t(Stream::rcs), std::uint64_t(link.target), s});
    ch.sigma_s = sample_sigma_s(rcs_rng, link.rcs->sigma_s_std_db);

    ScatterContext ctx{link.rcs, link.target_pose, link.spsts[s].face, ch.sigma_s, aperture, link.target, int(s),
                       wavelength(link.frequency_hz)};
    auto c = detail::candidates(ch.seg1, ch.seg2, ctx, cfg);
    for (const auto& x : c) best = std::max(best, x.weight);
    cands.push_back(std::move(c));
    out.spsts.push_back(std::move(ch));
  }
  // All scattering points share the same large-scale gain, so comparing weights is enough.
  const double floor = best * db_to_linear(-cfg.drop_threshold_db);
  for (std::size_t s = 0; s < cands.size(); ++s) {
    const auto& ch = out.spsts[s];
    ScatterContext ctx{link.rcs, link.target_pose, link.spsts[s].face, ch.sigma_s, aperture, link.target, int(s),
                       wavelength(link.frequency_hz)};
    for (const auto& c : cands[s])
      if (c.weight >= floor && c.weight > 0.0) out.paths.push_back(detail::materialize(ch.seg1, ch.seg2, ctx, c));
  }
  return out;
}

inline void apply_polarization(TargetChannel& tc, const RcsModel& rcs, Rng& rng) {
  for (auto& p : tc.paths) {
    const auto& ch = tc.spsts[std::size_t(p.spst)];
    p.cpm = sample_cpm(rng, sample_xpr(rng, rcs));
    p.pol = ch.seg2.clusters.rays[p.ray2].pol * p.cpm * ch.seg1.clusters.rays[p.ray1].pol;
  }
}

} // namespace isac
