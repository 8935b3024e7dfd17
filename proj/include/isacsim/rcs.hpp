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
#include <complex>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "constants.hpp"
#include "enums.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace isac {

enum class SpstMode { single, multi };
enum class FaceId { front, left, back, right, roof, bottom };

inline std::string to_string(FaceId f) {
  switch (f) {
    case FaceId::front: return "front";
    case FaceId::left: return "left";
    case FaceId::back: return "back";
    case FaceId::right: return "right";
    case FaceId::roof: return "roof";
    case FaceId::bottom: return "bottom";
  }
  return "?";
}

inline std::optional<FaceId> parse_face(std::string_view s) {
  for (FaceId f : {FaceId::front, FaceId::left, FaceId::back, FaceId::right, FaceId::roof, FaceId::bottom})
    if (to_string(f) == s) return f;
  return std::nullopt;
}

/// Half-open [lo, hi) interval in degrees, optionally closed at hi.
struct AngleRange {
  double lo = 0.0;
  double hi = 360.0;
  bool hi_closed = false;

  bool contains(double v) const { return v >= lo && (v < hi || (hi_closed && v == hi)); }

  // Azimuth ranges may be written in any 360-degree window, e.g. [225, 315).
  bool contains_azimuth(double az) const {
    if (hi - lo >= 360.0) return true;
    double v = std::fmod(az - lo, 360.0);
    if (v < 0.0) v += 360.0;
    v += lo;
    return contains(v);
  }
};

struct FaceParams {
  FaceId id = FaceId::front;
  std::optional<double> phi_center; // roof/bottom have no azimuth lobe
  double phi_3db = 0.0;
  double theta_center = 90.0;
  double theta_3db = 0.0;
  double g_max_db = 0.0;     // dBsm
  double sigma_max_db = 0.0; // dB
  AngleRange theta_range;
  AngleRange phi_range;

  bool covers(const SphericalAngle& local) const {
    return theta_range.contains(local.zenith) && phi_range.contains_azimuth(local.azimuth);
  }
};

struct RcsModel {
  TargetType target_type = TargetType::uav_small;
  SpstMode mode = SpstMode::single;
  double sigma_m_db = 0.0;     // component A, dBsm
  double sigma_s_std_db = 0.0; // log-normal fluctuation std
  bool angle_dependent = false;
  std::vector<FaceParams> faces;
  double k1 = 0.0;
  double k2 = 0.0;
  double xpr_mu_db = 0.0;
  double xpr_sigma_db = 0.0;
  // Forward-scattering term; -inf disables it.
  double forward_scattering_db = -std::numeric_limits<double>::infinity();
  Vector3 size{0.0, 0.0, 0.0}; // bounding box length (x), width (y), height (z), metres
};

/// Face table of the large UAV. Also the built-in default for other
/// angle-dependent targets until a measured table is supplied by config.
inline std::vector<FaceParams> large_uav_faces() {
  return {
      {FaceId::left, 90.0, 7.13, 90.0, 8.68, 7.43, 14.30, {45, 135}, {45, 135}},
      {FaceId::back, 180.0, 10.09, 90.0, 11.43, 3.99, 10.86, {45, 135}, {135, 225}},
      {FaceId::right, 270.0, 7.13, 90.0, 8.68, 7.43, 14.30, {45, 135}, {225, 315}},
      {FaceId::front, 0.0, 14.19, 90.0, 16.53, 1.02, 7.89, {45, 135}, {-45, 45}},
      {FaceId::bottom, std::nullopt, 0.0, 180.0, 4.93, 13.55, 20.42, {135, 180, true}, {0, 360}},
      {FaceId::roof, std::nullopt, 0.0, 0.0, 4.93, 13.55, 20.42, {0, 45}, {0, 360}},
  };
}

struct XprStats {
  double mu_db;
  double sigma_db;
};

inline XprStats builtin_xpr(TargetType t) {
  switch (t) {
    case TargetType::uav_small:
    case TargetType::uav_large: return {13.75, 7.07};
    case TargetType::human_m1:
    case TargetType::human_m2: return {19.81, 4.25};
    case TargetType::vehicle: return {21.12, 6.88};
    case TargetType::agv: return {9.6, 6.85};
  }
  return {0.0, 0.0};
}

inline RcsModel builtin_rcs_model(TargetType t, SpstMode mode = SpstMode::single) {
  if (mode == SpstMode::multi && t != TargetType::vehicle && t != TargetType::agv)
    throw ConfigError("multiple scattering points are only defined for vehicle and agv targets");
  RcsModel m;
  m.target_type = t;
  m.mode = mode;
  const XprStats xpr = builtin_xpr(t);
  m.xpr_mu_db = xpr.mu_db;
  m.xpr_sigma_db = xpr.sigma_db;
  switch (t) {
    case TargetType::uav_small:
      m.sigma_m_db = -12.81;
      m.sigma_s_std_db = 3.74;
      m.size = {0.3, 0.3, 0.1};
      return m;
    case TargetType::human_m1:
      m.sigma_m_db = -1.37;
      m.sigma_s_std_db = 3.94;
      m.size = {0.3, 0.5, 1.75};
      return m;
    case TargetType::uav_large:
      m.k1 = 6.05;
      m.k2 = 1.33;
      m.size = {1.6, 1.5, 0.7};
      break;
    case TargetType::human_m2:
      m.k1 = 0.5714;
      m.k2 = 0.1;
      m.size = {0.3, 0.5, 1.75};
      break;
    case TargetType::vehicle:
      m.k1 = 6.0;
      m.k2 = 1.65;
      m.size = {4.8, 1.9, 1.5};
      break;
    case TargetType::agv:
      m.k1 = 12.0;
      m.k2 = 1.45;
      m.size = {1.5, 0.5, 0.5};
      break;
  }
  m.angle_dependent = true;
  m.faces = large_uav_faces();
  return m;
}

/// Scattering point of a sensing target, in the target's local frame.
struct Spst {
  Vector3 offset;
  std::optional<FaceId> face; // set for multi-point layouts
};

inline std::vector<Spst> spst_layout(const RcsModel& model, const Vector3& size) {
  if (model.mode == SpstMode::single) return {Spst{}};
  const double hx = size.x / 2.0, hy = size.y / 2.0, hz = size.z / 2.0;
  return {
      {{hx, 0.0, 0.0}, FaceId::front},
      {{0.0, hy, 0.0}, FaceId::left},
      {{-hx, 0.0, 0.0}, FaceId::back},
      {{0.0, -hy, 0.0}, FaceId::right},
      {{0.0, 0.0, hz}, FaceId::roof},
  };
}

inline std::vector<Spst> spst_layout(const RcsModel& model) { return spst_layout(model, model.size); }

inline Vector3 spst_position(const Pose& target, const Spst& spst) { return local_to_global(target, spst.offset); }

namespace detail {

inline double azimuth_difference(double a, double b) { return wrap_azimuth(a - b); }

} // namespace detail

/// Antenna-like face pattern: G_max - min{-(sV + sH), sigma_max} with each
/// quadratic lobe floored at -sigma_max.
inline double face_pattern_db(const FaceParams& f, const SphericalAngle& local) {
  const double dv = (local.zenith - f.theta_center) / f.theta_3db;
  const double sv = std::max(-12.0 * dv * dv, -f.sigma_max_db);
  double sh = 0.0;
  if (f.phi_center) {
    const double dh = detail::azimuth_difference(local.azimuth, *f.phi_center) / f.phi_3db;
    sh = std::max(-12.0 * dh * dh, -f.sigma_max_db);
  }
  return f.g_max_db - std::min(-(sv + sh), f.sigma_max_db);
}

inline const FaceParams& face_by_id(const RcsModel& model, FaceId id) {
  for (const auto& f : model.faces)
    if (f.id == id) return f;
  throw NoFaceCovers("rcs model has no face '" + to_string(id) + "'");
}

inline const FaceParams& face_for(const RcsModel& model, const SphericalAngle& local) {
  for (const auto& f : model.faces)
    if (f.covers(local)) return f;
  throw NoFaceCovers("no rcs face covers zenith " + std::to_string(local.zenith) + ", azimuth " +
                     std::to_string(local.azimuth));
}

inline const FaceParams& active_face(const RcsModel& model, const SphericalAngle& local, std::optional<FaceId> face) {
  return face ? face_by_id(model, *face) : face_for(model, local);
}

/// 10 lg(sigma_M sigma_D) for a monostatic observation at a local-frame angle.
inline double sigma_md_mono_db(const RcsModel& model, const SphericalAngle& local,
                               std::optional<FaceId> face = std::nullopt) {
  if (!model.angle_dependent) return model.sigma_m_db;
  return face_pattern_db(active_face(model, local, face), local);
}

/// Bistatic 10 lg(sigma_M sigma_D). Both angles are outward directions from the
/// scatterer in its local frame; equal angles reduce exactly to the monostatic value.
inline double sigma_md_bistatic_db(const RcsModel& model, const SphericalAngle& incident,
                                   const SphericalAngle& scattered, std::optional<FaceId> face = std::nullopt) {
  const BisectorResult bis = bisector_and_beta(incident, scattered);
  const double half_beta = deg_to_rad(bis.beta) / 2.0;
  if (!model.angle_dependent)
    return std::max(model.sigma_m_db - 3.0 * std::sin(half_beta), model.forward_scattering_db);

  const FaceParams& f = active_face(model, bis.bisector, face);
  // cos(beta/2) -> 0 near forward scattering drives the log to -inf; the floor takes over.
  const double corrected = face_pattern_db(f, bis.bisector) - model.k1 * std::sin(model.k2 * half_beta) +
                           5.0 * std::log10(std::cos(half_beta));
  return std::max({corrected, f.g_max_db - f.sigma_max_db, model.forward_scattering_db});
}

inline double sigma_s_mean_db(double std_db) { return -std::log(10.0) / 20.0 * std_db * std_db; }

/// Log-normal fluctuation in linear scale with unit mean.
inline double sample_sigma_s(Rng& rng, double std_db) {
  if (std_db == 0.0) return 1.0;
  return db_to_linear(rng.normal(sigma_s_mean_db(std_db), std_db));
}

inline double sample_xpr_db(Rng& rng, const RcsModel& model) { return rng.normal(model.xpr_mu_db, model.xpr_sigma_db); }

/// XPR kappa in linear scale.
inline double sample_xpr(Rng& rng, const RcsModel& model) { return db_to_linear(sample_xpr_db(rng, model)); }

using Complex = std::complex<double>;

/// 2x2 polarization transfer matrix, rows/cols ordered (theta, phi).
struct Polarization {
  Complex tt{1.0, 0.0};
  Complex tp{0.0, 0.0};
  Complex pt{0.0, 0.0};
  Complex pp{1.0, 0.0};

  Polarization operator*(const Polarization& o) const {
    return {tt * o.tt + tp * o.pt, tt * o.tp + tp * o.pp, pt * o.tt + pp * o.pt, pt * o.tp + pp * o.pp};
  }
  bool operator==(const Polarization&) const = default;
};

/// Cross-polarization matrix of a scattering point.
using Cpm = Polarization;

inline Cpm sample_cpm(Rng& rng, double kappa) {
  const double x = std::isinf(kappa) ? 0.0 : std::sqrt(1.0 / kappa);
  const double p_tt = rng.phase(), p_tp = rng.phase(), p_pt = rng.phase(), p_pp = rng.phase();
  return {std::polar(1.0, p_tt), std::polar(x, p_tp), std::polar(x, p_pt), std::polar(1.0, p_pp)};
}

/// sigma_M * sigma_D * sigma_S in m^2 for one draw of the fluctuation.
inline double rcs_linear(const RcsModel& model, Rng& rng, const SphericalAngle& incident,
                         const SphericalAngle& scattered, std::optional<FaceId> face = std::nullopt) {
  return db_to_linear(sigma_md_bistatic_db(model, incident, scattered, face)) *
         sample_sigma_s(rng, model.sigma_s_std_db);
}

} // namespace isac
