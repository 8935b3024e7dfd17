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
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "constants.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "rcs.hpp"

namespace isac {

struct LspSet {
  double ds = 93e-9;  // s
  double asd = 13.6;  // deg
  double asa = 64.6;  // deg
  double zsa = 8.9;   // deg
  double zsd = 5.0;   // deg
  double k_factor_db = 9.0;
  int n_clusters = 12;
  int m_rays = 20;
  double r_tau = 2.5;
  double zeta_db = 3.0; // per-cluster shadowing std
  double c_asd = 5.0;   // intra-cluster spreads, deg
  double c_asa = 11.0;
  double c_zsa = 7.0;
  double c_zsd = 1.875;
  double xpr_mu_db = 8.0;
  double xpr_sigma_db = 4.0;

  void validate() const {
    if (!(ds > 0.0) || !(asd > 0.0) || !(asa > 0.0) || !(zsa > 0.0) || !(zsd > 0.0))
      throw ConfigError("lsp spreads must be positive");
    if (n_clusters < 1 || m_rays < 1) throw ConfigError("lsp needs at least one cluster and one ray");
    if (m_rays > 20) throw ConfigError("at most 20 rays per cluster are supported");
    if (!(r_tau >= 1.0)) throw ConfigError("lsp r_tau must be >= 1");
  }
};

/// Default UMa-like parameter sets at 6 GHz, non-normative.
inline LspSet default_lsp(bool los) {
  if (los) return LspSet{};
  LspSet l;
  l.ds = 363e-9;
  l.asd = 25.0;
  l.asa = 74.0;
  l.zsa = 18.6;
  l.zsd = 8.0;
  l.k_factor_db = 0.0;
  l.n_clusters = 20;
  l.r_tau = 2.3;
  l.c_asd = 2.0;
  l.c_asa = 15.0;
  l.c_zsd = 3.0;
  l.xpr_mu_db = 7.0;
  l.xpr_sigma_db = 3.0;
  return l;
}

inline constexpr std::array<double, 20> kRayOffsets{
    0.0447, -0.0447, 0.1413, -0.1413, 0.2492, -0.2492, 0.3715, -0.3715, 0.5129, -0.5129,
    0.6797, -0.6797, 0.8844, -0.8844, 1.1481, -1.1481, 1.5195, -1.5195, 2.1551, -2.1551,
};

namespace detail {

struct ScalingEntry {
  int n;
  double c;
};

inline constexpr std::array<ScalingEntry, 13> kAzimuthScaling{{
    {4, 0.779}, {5, 0.860}, {8, 1.018}, {10, 1.090}, {11, 1.123}, {12, 1.146}, {14, 1.190},
    {15, 1.211}, {16, 1.226}, {19, 1.273}, {20, 1.289}, {25, 1.358}, {26, 1.375},
}};

inline constexpr std::array<ScalingEntry, 9> kZenithScaling{{
    {8, 0.889}, {10, 0.957}, {11, 1.031}, {12, 1.104}, {15, 1.1088}, {19, 1.184}, {20, 1.178}, {25, 1.282},
    {26, 1.288},
}};

template <std::size_t N>
double interpolate_scaling(const std::array<ScalingEntry, N>& t, int n) {
  if (n <= t.front().n) return t.front().c;
  if (n >= t.back().n) return t.back().c;
  for (std::size_t i = 1; i < N; ++i) {
    if (n <= t[i].n) {
      const double u = double(n - t[i - 1].n) / double(t[i].n - t[i - 1].n);
      return t[i - 1].c + u * (t[i].c - t[i - 1].c);
    }
  }
  return t.back().c;
}

} // namespace detail

inline double azimuth_scaling(int n_clusters, bool los, double k_db) {
  const double c = detail::interpolate_scaling(detail::kAzimuthScaling, n_clusters);
  if (!los) return c;
  return c * (1.1035 - 0.028 * k_db - 0.002 * k_db * k_db + 0.0001 * k_db * k_db * k_db);
}

inline double zenith_scaling(int n_clusters, bool los, double k_db) {
  const double c = detail::interpolate_scaling(detail::kZenithScaling, n_clusters);
  if (!los) return c;
  return c * (1.3086 + 0.0339 * k_db - 0.0077 * k_db * k_db + 0.0002 * k_db * k_db * k_db);
}

struct Ray {
  int cluster = -1; // -1 marks the deterministic LoS ray
  int index = 0;
  double delay_s = 0.0; // relative to the segment's geometric delay
  double power = 0.0;   // fraction of the segment power
  SphericalAngle departure;
  SphericalAngle arrival;
  Polarization pol;

  bool is_los() const { return cluster < 0; }
};

struct ClusterSet {
  std::vector<double> delays; // per cluster, sorted, first is 0
  std::vector<double> powers; // per cluster, sums to 1
  std::vector<SphericalAngle> cluster_departure;
  std::vector<SphericalAngle> cluster_arrival;
  std::vector<Ray> rays;
  bool los = false;
  double k_linear = 0.0;

  double ray_power_sum() const {
    double s = 0.0;
    for (const auto& r : rays) s += r.power;
    return s;
  }
};

/// Per-ray random polarization from the segment XPR and four initial phases.
inline Polarization sample_ray_polarization(Rng& rng, double xpr_mu_db, double xpr_sigma_db) {
  const double kappa = db_to_linear(rng.normal(xpr_mu_db, xpr_sigma_db));
  return sample_cpm(rng, kappa);
}

inline Polarization los_polarization() { return {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{-1.0, 0.0}}; }

namespace detail {

inline std::vector<double> cluster_angles(Rng& rng, const std::vector<double>& powers, double spread, double scaling,
                                          double los_angle, bool los, bool zenith) {
  const std::size_t n = powers.size();
  const double p_max = *std::max_element(powers.begin(), powers.end());
  std::vector<double> out(n);
  double first = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ratio = std::max(powers[i] / p_max, 1e-300);
    const double base = zenith ? -spread * std::log(ratio) / scaling
                               : 2.0 * (spread / 1.4) * std::sqrt(-std::log(ratio)) / scaling;
    const double x = rng.uniform() < 0.5 ? -1.0 : 1.0;
    const double y = rng.normal(0.0, spread / 7.0);
    const double v = x * base + y;
    if (i == 0) first = v;
    out[i] = los ? v - first + los_angle : v + los_angle;
  }
  return out;
}

} // namespace detail

/// Cluster and ray generation for one link segment. The LoS angles give the
/// geometric departure and arrival directions the clusters are spread around.
inline ClusterSet generate_clusters(const LspSet& lsp, Rng& rng, bool los, const SphericalAngle& los_departure,
                                    const SphericalAngle& los_arrival) {
  lsp.validate();
  const int n = lsp.n_clusters;
  ClusterSet cs;
  cs.los = los;
  cs.k_linear = los ? db_to_linear(lsp.k_factor_db) : 0.0;

  std::vector<double> tau(n);
  for (auto& t : tau) t = -lsp.r_tau * lsp.ds * std::log(1.0 - rng.uniform());
  const double t_min = *std::min_element(tau.begin(), tau.end());
  for (auto& t : tau) t -= t_min;
  std::sort(tau.begin(), tau.end());

  std::vector<double> p(n);
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal(0.0, lsp.zeta_db);
    p[i] = std::exp(-tau[i] * (lsp.r_tau - 1.0) / (lsp.r_tau * lsp.ds)) * std::pow(10.0, -z / 10.0);
  }
  const double p_sum = std::accumulate(p.begin(), p.end(), 0.0);
  for (auto& v : p) v /= p_sum;

  // Angle spreading uses the K-adjusted powers so the LoS ray dominates the first cluster.
  std::vector<double> p_angle = p;
  if (los) {
    const double k = cs.k_linear;
    for (auto& v : p_angle) v /= (k + 1.0);
    p_angle[0] += k / (k + 1.0);
  }

  const double k_db = lsp.k_factor_db;
  const double c_phi = azimuth_scaling(n, los, k_db);
  const double c_theta = zenith_scaling(n, los, k_db);
  const auto aoa = detail::cluster_angles(rng, p_angle, lsp.asa, c_phi, los_arrival.azimuth, los, false);
  const auto aod = detail::cluster_angles(rng, p_angle, lsp.asd, c_phi, los_departure.azimuth, los, false);
  const auto zoa = detail::cluster_angles(rng, p_angle, lsp.zsa, c_theta, los_arrival.zenith, los, true);
  const auto zod = detail::cluster_angles(rng, p_angle, lsp.zsd, c_theta, los_departure.zenith, los, true);

  cs.delays = tau;
  cs.powers = p;
  for (int i = 0; i < n; ++i) {
    cs.cluster_departure.push_back(make_angle(zod[i], aod[i]));
    cs.cluster_arrival.push_back(make_angle(zoa[i], aoa[i]));
  }

  const double cluster_scale = los ? 1.0 / (cs.k_linear + 1.0) : 1.0;
  if (los) {
    Ray r;
    r.cluster = -1;
    r.power = cs.k_linear / (cs.k_linear + 1.0);
    r.departure = los_departure;
    r.arrival = los_arrival;
    r.pol = los_polarization();
    cs.rays.push_back(r);
  }

  const int m = lsp.m_rays;
  std::array<int, 20> idx{};
  cs.rays.reserve(cs.rays.size() + std::size_t(n) * std::size_t(m));
  for (int i = 0; i < n; ++i) {
    // Random coupling of the four angle dimensions within the cluster.
    std::array<std::array<int, 20>, 4> perm;
    for (auto& pm : perm) {
      std::iota(idx.begin(), idx.begin() + m, 0);
      std::shuffle(idx.begin(), idx.begin() + m, rng.engine());
      pm = idx;
    }
    for (int j = 0; j < m; ++j) {
      Ray r;
      r.cluster = i;
      r.index = j;
      r.delay_s = tau[i];
      r.power = p[i] * cluster_scale / m;
      r.arrival = make_angle(zoa[i] + lsp.c_zsa * kRayOffsets[perm[2][j]], aoa[i] + lsp.c_asa * kRayOffsets[perm[0][j]]);
      r.departure = make_angle(zod[i] + lsp.c_zsd * kRayOffsets[perm[3][j]], aod[i] + lsp.c_asd * kRayOffsets[perm[1][j]]);
      r.pol = sample_ray_polarization(rng, lsp.xpr_mu_db, lsp.xpr_sigma_db);
      cs.rays.push_back(r);
    }
  }
  return cs;
}

inline ClusterSet generate_clusters(const LspSet& lsp, Rng& rng, bool los = false) {
  return generate_clusters(lsp, rng, los, SphericalAngle{90.0, 0.0}, SphericalAngle{90.0, -180.0});
}

/// LoS-only segment: a single deterministic ray carrying all power.
inline ClusterSet los_only_segment(const SphericalAngle& departure, const SphericalAngle& arrival) {
  ClusterSet cs;
  cs.los = true;
  cs.k_linear = std::numeric_limits<double>::infinity();
  Ray r;
  r.power = 1.0;
  r.departure = departure;
  r.arrival = arrival;
  r.pol = los_polarization();
  cs.rays.push_back(r);
  return cs;
}

struct DirectPath {
  double delay_s = 0.0;
  SphericalAngle departure; // at Tx toward the anchor
  SphericalAngle arrival;   // at Rx toward the anchor
  SphericalAngle incident;  // at the anchor toward Tx
  SphericalAngle scattered; // at the anchor toward Rx
  double phase = 0.0;       // -2 pi (d1 + d2) / lambda, wrapped; set when a wavelength is given
};

inline DirectPath direct_path(const Vector3& tx, const Vector3& anchor, const Vector3& rx, double lambda = 0.0) {
  const double d1 = distance(tx, anchor);
  const double d2 = distance(anchor, rx);
  if (d1 == 0.0 || d2 == 0.0) throw DegenerateGeometry("direct path has a zero-length segment");
  DirectPath p;
  p.delay_s = (d1 + d2) / kSpeedOfLight;
  p.departure = direction_angle(anchor - tx);
  p.arrival = direction_angle(anchor - rx);
  p.incident = direction_angle(tx - anchor);
  p.scattered = direction_angle(rx - anchor);
  if (lambda > 0.0) p.phase = std::remainder(-kTwoPi * (d1 + d2) / lambda, kTwoPi);
  return p;
}

/// Phase change of the direct path when the two segment ends move by d1, d2
/// at angles dtheta1, dtheta2 to the respective segment directions.
inline double mobility_phase(double d1, double d2, double dtheta1, double dtheta2, double lambda) {
  return kTwoPi / lambda * (d1 * std::cos(dtheta1) + d2 * std::cos(dtheta2));
}

} // namespace isac
