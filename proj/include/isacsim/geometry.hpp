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

#include "constants.hpp"

namespace isac {

struct Vector3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vector3 operator+(const Vector3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vector3 operator-(const Vector3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vector3 operator-() const { return {-x, -y, -z}; }
  constexpr Vector3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vector3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr Vector3& operator+=(const Vector3& o) {
    x += o.x;
    y += o.y;
    z += o.z;
    return *this;
  }
  constexpr bool operator==(const Vector3&) const = default;

  constexpr double dot(const Vector3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vector3 cross(const Vector3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double norm() const { return std::sqrt(dot(*this)); }
  double norm_2d() const { return std::hypot(x, y); }
  Vector3 normalized() const { return *this / norm(); }
};

constexpr Vector3 operator*(double s, const Vector3& v) { return v * s; }

inline double distance(const Vector3& a, const Vector3& b) { return (a - b).norm(); }
inline double distance_2d(const Vector3& a, const Vector3& b) { return (a - b).norm_2d(); }

/// Wraps an azimuth in degrees into [-180, 180).
inline double wrap_azimuth(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w < 0.0) w += 360.0;
  w -= 180.0;
  return w >= 180.0 ? -180.0 : w;
}

/// Direction in degrees. Zenith 0 is +z; azimuth 0 is +x, 90 is +y.
struct SphericalAngle {
  double zenith = 90.0;
  double azimuth = 0.0;

  constexpr bool operator==(const SphericalAngle&) const = default;
};

inline SphericalAngle make_angle(double zenith, double azimuth) {
  // Zenith values past the poles fold back onto the sphere.
  double z = std::fmod(zenith, 360.0);
  if (z < 0.0) z += 360.0;
  if (z > 180.0) {
    z = 360.0 - z;
    azimuth += 180.0;
  }
  return {std::clamp(z, 0.0, 180.0), wrap_azimuth(azimuth)};
}

inline Vector3 spherical_unit_vector(const SphericalAngle& a) {
  const double th = deg_to_rad(a.zenith);
  const double ph = deg_to_rad(a.azimuth);
  return {std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
}

/// Angle of a (not necessarily normalized) direction vector.
inline SphericalAngle direction_angle(const Vector3& v) {
  const double r = v.norm();
  const double zen = rad_to_deg(std::acos(std::clamp(v.z / r, -1.0, 1.0)));
  return {zen, wrap_azimuth(rad_to_deg(std::atan2(v.y, v.x)))};
}

/// Position plus heading; heading is the azimuth of the body's front in degrees.
struct Pose {
  Vector3 position;
  double heading = 0.0;
};

inline Vector3 rotate_z(const Vector3& v, double deg) {
  const double c = std::cos(deg_to_rad(deg));
  const double s = std::sin(deg_to_rad(deg));
  return {c * v.x - s * v.y, s * v.x + c * v.y, v.z};
}

inline Vector3 local_to_global(const Pose& pose, const Vector3& local_offset) {
  return pose.position + rotate_z(local_offset, pose.heading);
}

inline SphericalAngle gcs_to_lcs(const SphericalAngle& a, const Pose& pose) {
  return {a.zenith, wrap_azimuth(a.azimuth - pose.heading)};
}

inline SphericalAngle lcs_to_gcs(const SphericalAngle& a, const Pose& pose) {
  return {a.zenith, wrap_azimuth(a.azimuth + pose.heading)};
}

struct BisectorResult {
  SphericalAngle bisector;
  double beta = 0.0; // degrees in [0, 180]
  bool degenerate = false;
};

/// Bisector of two outward directions at a scatterer and the angle between them.
/// Identical inputs return the input angle itself so that monostatic evaluation
/// is bit-exact. Antipodal inputs pick the horizontal perpendicular with the
/// smaller azimuth and set the degenerate flag.
inline BisectorResult bisector_and_beta(const SphericalAngle& incident, const SphericalAngle& scattered) {
  const Vector3 a = spherical_unit_vector(incident);
  const Vector3 b = spherical_unit_vector(scattered);
  const double cos_beta = std::clamp(a.dot(b), -1.0, 1.0);
  BisectorResult r;
  r.beta = rad_to_deg(std::acos(cos_beta));
  if (incident == scattered) {
    r.bisector = incident;
    r.beta = 0.0;
    return r;
  }
  const Vector3 sum = a + b;
  if (sum.norm() > 1e-12) {
    r.bisector = direction_angle(sum);
    return r;
  }
  r.degenerate = true;
  r.beta = 180.0;
  const Vector3 up{0.0, 0.0, 1.0};
  Vector3 p = up.cross(a);
  if (p.norm() < 1e-12) {
    // Vertical incidence: every horizontal direction is perpendicular.
    r.bisector = {90.0, -180.0};
    return r;
  }
  const SphericalAngle c1 = direction_angle(p);
  const SphericalAngle c2 = direction_angle(-p);
  r.bisector = c1.azimuth <= c2.azimuth ? c1 : c2;
  return r;
}

} // namespace isac
