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
#include "error.hpp"
#include "geometry.hpp"
#include "large_scale.hpp"
#include "path.hpp"

namespace isac {

enum class EoKind { type1, type2 };

/// Finite rectangular reflector centred on point, spanning width along u and height along v.
struct Plane {
  Vector3 point;
  Vector3 normal{0.0, 0.0, 1.0};
  double width = 0.0;
  double height = 0.0;

  // In-plane axes: u is horizontal where possible.
  Vector3 u_axis() const {
    const Vector3 z{0.0, 0.0, 1.0};
    const Vector3 c = z.cross(normal);
    if (c.norm() < 1e-12) return {1.0, 0.0, 0.0};
    return c.normalized();
  }
  Vector3 v_axis() const { return normal.cross(u_axis()); }
};

struct EoDescriptor {
  EoKind kind = EoKind::type2;
  Plane plane;
  double reflection_loss_db = 3.0;
  // type-1 objects behave as sensing targets; the campaign forwards them to the target pipeline.
  std::optional<TargetType> target_type;
  Pose pose;

  void validate() const {
    if (kind != EoKind::type2) return;
    const double n = plane.normal.norm();
    if (std::abs(n - 1.0) > 1e-9) throw ConfigError("environment object normal must be a unit vector");
    if (!(plane.width > 0.0 && plane.height > 0.0)) throw ConfigError("environment object extent must be positive");
  }
};

struct EoPath {
  double delay_s = 0.0;
  double length = 0.0;
  Vector3 reflection_point;
  SphericalAngle departure; // at Tx toward the reflection point
  SphericalAngle arrival;   // at Rx toward the reflection point
  double gain_db = 0.0;     // free space over the unfolded length minus the reflection loss
  Polarization pol;
};

/// Single-bounce specular path via the image source. Returns nothing when the
/// reflection point falls outside the rectangle or the nodes straddle the plane.
inline std::optional<EoPath> mirror_path(const Vector3& tx, const EoDescriptor& eo, const Vector3& rx,
                                         double frequency_hz) {
  if (eo.kind != EoKind::type2) throw ConfigError("mirror paths need a type-2 environment object");
  const Plane& pl = eo.plane;
  const Vector3 n = pl.normal;
  const double st = (tx - pl.point).dot(n);
  const double sr = (rx - pl.point).dot(n);
  if (!(st * sr > 0.0)) return std::nullopt;
  const Vector3 image = tx - n * (2.0 * st);
  const Vector3 dir = rx - image;
  const double denom = dir.dot(n);
  if (denom == 0.0) return std::nullopt;
  const double t = -(image - pl.point).dot(n) / denom;
  const Vector3 hit = image + dir * t;
  const Vector3 rel = hit - pl.point;
  if (std::abs(rel.dot(pl.u_axis())) > pl.width / 2.0 || std::abs(rel.dot(pl.v_axis())) > pl.height / 2.0)
    return std::nullopt;
  EoPath p;
  p.length = dir.norm();
  p.delay_s = p.length / kSpeedOfLight;
  p.reflection_point = hit;
  p.departure = direction_angle(hit - tx);
  p.arrival = direction_angle(hit - rx);
  p.gain_db = -free_space_pathloss_db(p.length, frequency_hz) - eo.reflection_loss_db;
  // Specular reflection flips the tangential field component.
  p.pol = {Complex{1.0, 0.0}, Complex{}, Complex{}, Complex{-1.0, 0.0}};
  return p;
}

/// Mirror paths of all type-2 objects, unscaled. The K_EO split is applied when the CIR is assembled.
inline PathSet build_eo_channel(const Vector3& tx, const Vector3& rx, const std::vector<EoDescriptor>& eos,
                                double k_eo, double frequency_hz) {
  if (k_eo < 0.0 || k_eo > 1.0) throw ConfigError("K_EO must be in [0, 1]");
  PathSet out;
  if (k_eo == 0.0) return out;
  for (std::size_t k = 0; k < eos.size(); ++k) {
    if (eos[k].kind != EoKind::type2) continue;
    const auto mp = mirror_path(tx, eos[k], rx, frequency_hz);
    if (!mp) continue;
    Path p;
    p.kind = PathKind::eo;
    p.delay_s = mp->delay_s;
    p.weight = 1.0;
    p.gain_db = mp->gain_db;
    p.departure = mp->departure;
    p.arrival = mp->arrival;
    p.incident = direction_angle(tx - mp->reflection_point);
    p.scattered = direction_angle(rx - mp->reflection_point);
    p.pol = mp->pol;
    p.phase = std::remainder(-kTwoPi * mp->length / wavelength(frequency_hz), kTwoPi);
    p.target = int(k);
    p.deterministic = true;
    out.push_back(p);
  }
  return out;
}

} // namespace isac
