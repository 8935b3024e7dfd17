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

#include <cmath>
#include <optional>
#include <vector>

#include "constants.hpp"
#include "doppler.hpp"
#include "geometry.hpp"
#include "rcs.hpp"

namespace isac {

enum class PathKind { direct, target, background, eo };

/// One propagation path of a link, after concatenation where applicable.
struct Path {
  PathKind kind = PathKind::target;
  double delay_s = 0.0; // absolute
  // Linear power share: segment ray powers, RCS pattern and fluctuation, normalization.
  double weight = 0.0;
  // Large-scale gain in dB (negative of the loss), applied on top of weight.
  double gain_db = 0.0;
  SphericalAngle departure; // at Tx, global frame
  SphericalAngle arrival;   // at Rx, global frame
  SphericalAngle incident;  // at the scattering point toward the Tx side, global frame
  SphericalAngle scattered; // at the scattering point toward the Rx side, global frame
  Polarization pol;
  double phase = 0.0; // deterministic phase, rad
  double doppler_hz = 0.0;
  // Micro-Doppler: displacement A*(sin(wt+phi) - sin(phi)) along the axis times this
  // projection gives the extra path-length change in wavelengths.
  double micro_projection = 0.0;
  std::optional<MicroMotion> micro;
  int target = -1;
  int spst = -1;
  int ray1 = -1; // index into the first segment's rays
  int ray2 = -1; // index into the second segment's rays
  bool deterministic = false; // LoS ray or specular reflection, no random scatterer motion
  // Scattering point cross-polarization; kept until the polarization stage composes it.
  Cpm cpm;

  double power_linear() const { return weight * std::pow(10.0, gain_db / 10.0); }
  double power_db() const { return 10.0 * std::log10(weight) + gain_db; }

  double doppler_at(double t) const {
    if (!micro) return doppler_hz;
    const double w = kTwoPi * micro->frequency;
    return doppler_hz + micro_projection * micro->amplitude * w * std::cos(w * t + micro->phase);
  }

  /// 2 pi times the integral of the Doppler frequency from 0 to t.
  double doppler_phase(double t) const {
    double cycles = doppler_hz * t;
    if (micro) {
      const double w = kTwoPi * micro->frequency;
      cycles += micro_projection * micro->amplitude * (std::sin(w * t + micro->phase) - std::sin(micro->phase));
    }
    return kTwoPi * cycles;
  }
};

using PathSet = std::vector<Path>;

inline double total_power(const PathSet& ps) {
  double s = 0.0;
  for (const auto& p : ps) s += p.power_linear();
  return s;
}

/// Paths more than threshold_db below the strongest are removed; the order of survivors is kept.
inline PathSet drop_weak_paths(PathSet ps, double threshold_db) {
  if (ps.empty()) return ps;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& p : ps) best = std::max(best, p.power_db());
  const double floor = best - threshold_db;
  std::erase_if(ps, [&](const Path& p) { return !(p.power_db() >= floor); });
  return ps;
}

inline PathSet multi_target_superpose(const std::vector<PathSet>& per_target) {
  PathSet out;
  std::size_t n = 0;
  for (const auto& ps : per_target) n += ps.size();
  out.reserve(n);
  for (const auto& ps : per_target) out.insert(out.end(), ps.begin(), ps.end());
  return out;
}

struct DopplerContext {
  double lambda = 1.0;
  Vector3 v_tx;
  Vector3 v_rx;
  Vector3 v_target;
  ScattererMotionParams scatterers;
  // Micro motion per scattering point index, axis in the global frame.
  std::vector<std::optional<MicroMotion>> micro;
};

inline DopplerState doppler_state(const Path& p, const DopplerContext& ctx, const ScattererMotion& motion) {
  DopplerState s;
  s.lambda = ctx.lambda;
  s.v_tx = ctx.v_tx;
  s.v_rx = ctx.v_rx;
  s.r_tx = spherical_unit_vector(p.departure);
  s.r_rx = spherical_unit_vector(p.arrival);
  if (p.kind == PathKind::target || p.kind == PathKind::direct) {
    s.v_spst = ctx.v_target;
    s.r_spst_tx = spherical_unit_vector(p.incident);
    s.r_spst_rx = spherical_unit_vector(p.scattered);
    if (p.spst >= 0 && std::size_t(p.spst) < ctx.micro.size()) s.micro = ctx.micro[std::size_t(p.spst)];
  }
  s.motion = motion;
  return s;
}

/// Fills doppler_hz and the micro-Doppler terms of every path. Random scatterer
/// motion is drawn once per path; the LoS rays of a link have no scatterer.
inline void apply_doppler(PathSet& paths, const DopplerContext& ctx, Rng& rng) {
  for (auto& p : paths) {
    ScattererMotion m = sample_scatterer_motion(rng, ctx.scatterers);
    if (p.deterministic) m = {};
    DopplerState s = doppler_state(p, ctx, m);
    p.micro = s.micro;
    s.micro.reset();
    p.doppler_hz = path_doppler(s, 0.0);
    p.micro_projection = p.micro ? (s.r_spst_tx + s.r_spst_rx).dot(p.micro->axis) / ctx.lambda : 0.0;
  }
}

} // namespace isac
