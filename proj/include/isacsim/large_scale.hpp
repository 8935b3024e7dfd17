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
#include <optional>
#include <string>

#include "constants.hpp"
#include "enums.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace isac {

// ---------------------------------------------------------------------------
// Path-loss curves
// ---------------------------------------------------------------------------

enum class PathlossKind {
  free_space,
  curve,       // a*lg(d3D) + b + c*lg(f_GHz)
  uma_los,     // TR 38.901 UMa LoS (dual slope)
  uma_nlos,    // TR 38.901 UMa NLoS
  umi_los,     // TR 38.901 UMi street canyon LoS
  umi_nlos,    // TR 38.901 UMi street canyon NLoS
  uma_av_nlos, // TR 36.777 UMa-AV NLoS for aerial UTs
};

inline std::optional<PathlossKind> parse_pathloss_kind(std::string_view s) {
  if (s == "free_space") return PathlossKind::free_space;
  if (s == "curve") return PathlossKind::curve;
  if (s == "uma_los") return PathlossKind::uma_los;
  if (s == "uma_nlos") return PathlossKind::uma_nlos;
  if (s == "umi_los") return PathlossKind::umi_los;
  if (s == "umi_nlos") return PathlossKind::umi_nlos;
  if (s == "uma_av_nlos") return PathlossKind::uma_av_nlos;
  return std::nullopt;
}

inline std::string to_string(PathlossKind k) {
  switch (k) {
    case PathlossKind::free_space: return "free_space";
    case PathlossKind::curve: return "curve";
    case PathlossKind::uma_los: return "uma_los";
    case PathlossKind::uma_nlos: return "uma_nlos";
    case PathlossKind::umi_los: return "umi_los";
    case PathlossKind::umi_nlos: return "umi_nlos";
    case PathlossKind::uma_av_nlos: return "uma_av_nlos";
  }
  return "?";
}

struct PathlossModel {
  PathlossKind kind = PathlossKind::free_space;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  static PathlossModel free_space() { return {}; }
  static PathlossModel curve(double a, double b, double c) { return {PathlossKind::curve, a, b, c}; }
  static PathlossModel of(PathlossKind k) { return {k, 0.0, 0.0, 0.0}; }
};

/// Geometry of one link segment between an infrastructure ("bs") end and a
/// terminal ("ut") end. aerial marks a UT end that is an aerial vehicle.
struct SegmentGeometry {
  double d3d = 0.0;
  double d2d = 0.0;
  double h_bs = 25.0;
  double h_ut = 1.5;
  bool aerial = false;

  static SegmentGeometry between(const Vector3& bs, const Vector3& ut, bool aerial = false) {
    SegmentGeometry g;
    g.d3d = distance(bs, ut);
    g.d2d = distance_2d(bs, ut);
    g.h_bs = bs.z;
    g.h_ut = ut.z;
    g.aerial = aerial;
    return g;
  }

  // Range-only geometry with default heights; used by the distance-only helpers.
  static SegmentGeometry from_distance(double d, double h_bs = 25.0, double h_ut = 1.5) {
    SegmentGeometry g;
    g.d3d = d;
    const double dh = h_bs - h_ut;
    g.d2d = std::sqrt(std::max(d * d - dh * dh, 0.0));
    g.h_bs = h_bs;
    g.h_ut = h_ut;
    return g;
  }

  SegmentGeometry scaled(double factor) const {
    SegmentGeometry g = *this;
    g.d3d *= factor;
    g.d2d *= factor;
    return g;
  }
};

inline double free_space_pathloss_db(double d, double frequency_hz) {
  return 20.0 * std::log10(4.0 * kPi * d * frequency_hz / kSpeedOfLight);
}

namespace detail {

inline double uma_los_db(const SegmentGeometry& g, double f_ghz, double frequency_hz) {
  const double h_bs_eff = std::max(g.h_bs - 1.0, 0.1);
  const double h_ut_eff = std::max(g.h_ut - 1.0, 0.1);
  const double d_bp = 4.0 * h_bs_eff * h_ut_eff * frequency_hz / kSpeedOfLight;
  const double pl1 = 28.0 + 22.0 * std::log10(g.d3d) + 20.0 * std::log10(f_ghz);
  if (g.d2d <= d_bp) return pl1;
  const double dh = g.h_bs - g.h_ut;
  return 28.0 + 40.0 * std::log10(g.d3d) + 20.0 * std::log10(f_ghz) - 9.0 * std::log10(d_bp * d_bp + dh * dh);
}

inline double umi_los_db(const SegmentGeometry& g, double f_ghz, double frequency_hz) {
  const double h_bs_eff = std::max(g.h_bs - 1.0, 0.1);
  const double h_ut_eff = std::max(g.h_ut - 1.0, 0.1);
  const double d_bp = 4.0 * h_bs_eff * h_ut_eff * frequency_hz / kSpeedOfLight;
  const double pl1 = 32.4 + 21.0 * std::log10(g.d3d) + 20.0 * std::log10(f_ghz);
  if (g.d2d <= d_bp) return pl1;
  const double dh = g.h_bs - g.h_ut;
  return 32.4 + 40.0 * std::log10(g.d3d) + 20.0 * std::log10(f_ghz) - 9.5 * std::log10(d_bp * d_bp + dh * dh);
}

} // namespace detail

inline double pathloss_db(const PathlossModel& model, const SegmentGeometry& g, double frequency_hz) {
  if (!(g.d3d >= 1.0))
    throw DistanceOutOfRange("path-loss distance " + std::to_string(g.d3d) + " m is below the 1 m minimum");
  const double f_ghz = frequency_hz / 1e9;
  switch (model.kind) {
    case PathlossKind::free_space: return free_space_pathloss_db(g.d3d, frequency_hz);
    case PathlossKind::curve: return model.a * std::log10(g.d3d) + model.b + model.c * std::log10(f_ghz);
    case PathlossKind::uma_los: return detail::uma_los_db(g, f_ghz, frequency_hz);
    case PathlossKind::uma_nlos:
      return std::max(detail::uma_los_db(g, f_ghz, frequency_hz),
                      13.54 + 39.08 * std::log10(g.d3d) + 20.0 * std::log10(f_ghz) - 0.6 * (g.h_ut - 1.5));
    case PathlossKind::umi_los: return detail::umi_los_db(g, f_ghz, frequency_hz);
    case PathlossKind::umi_nlos:
      return std::max(detail::umi_los_db(g, f_ghz, frequency_hz),
                      35.3 * std::log10(g.d3d) + 22.4 + 21.3 * std::log10(f_ghz) - 0.3 * (g.h_ut - 1.5));
    case PathlossKind::uma_av_nlos:
      return -17.5 + (46.0 - 7.0 * std::log10(g.h_ut)) * std::log10(g.d3d) +
             20.0 * std::log10(40.0 * kPi * f_ghz / 3.0);
  }
  return 0.0;
}

// ---------------------------------------------------------------------------
// LoS probability
// ---------------------------------------------------------------------------

enum class LosKind { uma, umi, inh_mixed, constant };

inline std::optional<LosKind> parse_los_kind(std::string_view s) {
  if (s == "uma") return LosKind::uma;
  if (s == "umi") return LosKind::umi;
  if (s == "inh_mixed") return LosKind::inh_mixed;
  if (s == "constant") return LosKind::constant;
  return std::nullopt;
}

struct LosModel {
  LosKind kind = LosKind::constant;
  double probability = 1.0; // for LosKind::constant
};

inline double los_probability(const LosModel& model, double d2d, double h_ut) {
  switch (model.kind) {
    case LosKind::constant: return std::clamp(model.probability, 0.0, 1.0);
    case LosKind::uma: {
      if (d2d <= 18.0) return 1.0;
      const double base = 18.0 / d2d + std::exp(-d2d / 63.0) * (1.0 - 18.0 / d2d);
      if (h_ut <= 13.0) return base;
      const double c = std::pow((h_ut - 13.0) / 10.0, 1.5);
      return base * (1.0 + c * 5.0 / 4.0 * std::pow(d2d / 100.0, 3.0) * std::exp(-d2d / 150.0));
    }
    case LosKind::umi:
      if (d2d <= 18.0) return 1.0;
      return 18.0 / d2d + std::exp(-d2d / 36.0) * (1.0 - 18.0 / d2d);
    case LosKind::inh_mixed:
      if (d2d <= 1.2) return 1.0;
      if (d2d < 6.5) return std::exp(-(d2d - 1.2) / 4.7);
      return std::exp(-(d2d - 6.5) / 32.6) * 0.32;
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// Scenario propagation model
// ---------------------------------------------------------------------------

struct ShadowFading {
  double ground_los_db = 4.0;
  double ground_nlos_db = 6.0;
  double aerial_nlos_db = 6.0;
  // When unset, aerial LoS uses 4.64 * exp(-0.0066 h).
  std::optional<double> aerial_los_db;

  double stddev(bool los, bool aerial, double h_ut) const {
    if (!aerial) return los ? ground_los_db : ground_nlos_db;
    if (!los) return aerial_nlos_db;
    return aerial_los_db ? *aerial_los_db : 4.64 * std::exp(-0.0066 * h_ut);
  }
};

struct PropagationModel {
  ScenarioId id = ScenarioId::uma;
  std::optional<PathlossModel> ground_los;
  std::optional<PathlossModel> ground_nlos;
  std::optional<PathlossModel> aerial_los;
  std::optional<PathlossModel> aerial_nlos;
  std::optional<LosModel> ground_los_model;
  LosModel aerial_los_model{LosKind::constant, 1.0};
  double aerial_height_threshold = 22.5; // aerial UT ends above this use the aerial curves
  ShadowFading shadow_fading;

  bool is_aerial(const SegmentGeometry& g) const { return g.aerial && g.h_ut > aerial_height_threshold; }
};

inline PropagationModel propagation_preset(ScenarioId id) {
  PropagationModel m;
  m.id = id;
  switch (id) {
    case ScenarioId::uma_av:
    case ScenarioId::uma:
      m.ground_los = PathlossModel::of(PathlossKind::uma_los);
      m.ground_nlos = PathlossModel::of(PathlossKind::uma_nlos);
      m.aerial_los = PathlossModel::curve(22.0, 28.0, 20.0);
      m.aerial_nlos = PathlossModel::of(PathlossKind::uma_av_nlos);
      m.ground_los_model = LosModel{LosKind::uma, 1.0};
      m.shadow_fading = {4.0, 6.0, 6.0, std::nullopt};
      break;
    case ScenarioId::umi:
      m.ground_los = PathlossModel::of(PathlossKind::umi_los);
      m.ground_nlos = PathlossModel::of(PathlossKind::umi_nlos);
      m.aerial_los = PathlossModel::of(PathlossKind::umi_los);
      m.aerial_nlos = PathlossModel::of(PathlossKind::umi_nlos);
      m.ground_los_model = LosModel{LosKind::umi, 1.0};
      m.shadow_fading = {4.0, 7.82, 7.82, 4.0};
      break;
    case ScenarioId::inh:
      m.ground_los = PathlossModel::curve(17.3, 32.4, 20.0);
      m.ground_nlos = PathlossModel::curve(38.3, 17.3, 24.9);
      m.aerial_los = m.ground_los;
      m.aerial_nlos = m.ground_nlos;
      m.ground_los_model = LosModel{LosKind::inh_mixed, 1.0};
      m.aerial_los_model = LosModel{LosKind::inh_mixed, 1.0};
      m.aerial_height_threshold = 1e9;
      m.shadow_fading = {3.0, 8.03, 8.03, 3.0};
      break;
    case ScenarioId::rma:
    case ScenarioId::inf:
    case ScenarioId::urban_grid:
      // Only the free-space baseline ships; LoS statistics must come from config.
      m.ground_los = PathlossModel::free_space();
      m.ground_nlos = PathlossModel::free_space();
      m.aerial_los = PathlossModel::free_space();
      m.aerial_nlos = PathlossModel::free_space();
      break;
  }
  return m;
}

inline double los_probability(const SegmentGeometry& g, const PropagationModel& model) {
  if (model.is_aerial(g)) return los_probability(model.aerial_los_model, g.d2d, g.h_ut);
  if (!model.ground_los_model)
    throw UnsupportedScenario("no LoS probability model configured for scenario " + to_string(model.id));
  return los_probability(*model.ground_los_model, g.d2d, g.h_ut);
}

inline const PathlossModel& select_curve(const PropagationModel& model, const SegmentGeometry& g, bool los) {
  const bool aerial = model.is_aerial(g);
  const auto& curve = aerial ? (los ? model.aerial_los : model.aerial_nlos) : (los ? model.ground_los : model.ground_nlos);
  if (!curve) throw UnsupportedScenario("no path-loss curve configured for scenario " + to_string(model.id));
  return *curve;
}

inline double pathloss_segment(const SegmentGeometry& g, double frequency_hz, const PropagationModel& model, bool los) {
  return pathloss_db(select_curve(model, g, los), g, frequency_hz);
}

inline double pathloss_segment(double d, double frequency_hz, const PropagationModel& model, bool los) {
  return pathloss_segment(SegmentGeometry::from_distance(d), frequency_hz, model, los);
}

inline double shadow_fading_std(const SegmentGeometry& g, const PropagationModel& model, bool los) {
  return model.shadow_fading.stddev(los, model.is_aerial(g), g.h_ut);
}

// ---------------------------------------------------------------------------
// Concatenation and coupling loss
// ---------------------------------------------------------------------------

/// 10 lg(lambda^2 / (4 pi)) = 10 lg(c^2 / (4 pi f^2)), the receive-aperture term.
inline double aperture_db(double frequency_hz) {
  const double lambda = wavelength(frequency_hz);
  return 10.0 * std::log10(lambda * lambda / (4.0 * kPi));
}

/// Radar-equation path loss of a Tx-target-Rx link given the two segment losses.
inline double concatenate_pathloss(double pl1_db, double pl2_db, double frequency_hz, double sigma_rcs_m2) {
  return pl1_db + pl2_db + aperture_db(frequency_hz) - 10.0 * std::log10(sigma_rcs_m2);
}

inline double pathloss_concatenated(double d1, double d2, double frequency_hz, double sigma_rcs_m2,
                                    const PathlossModel& curve) {
  if (!(sigma_rcs_m2 > 0.0)) throw DistanceOutOfRange("rcs must be positive");
  return concatenate_pathloss(pathloss_db(curve, SegmentGeometry::from_distance(d1), frequency_hz),
                              pathloss_db(curve, SegmentGeometry::from_distance(d2), frequency_hz), frequency_hz,
                              sigma_rcs_m2);
}

enum class LinkCondition { los, nlos };

struct LosState {
  bool tx_target_los = true;
  bool target_rx_los = true;
  bool monostatic = false;

  bool both_los() const { return tx_target_los && target_rx_los; }
  bool operator==(const LosState&) const = default;
};

/// Independent per-segment Bernoulli draws against uniform variates that the
/// caller obtains (spatially consistent when applicable). Monostatic links use
/// only the first draw.
inline LosState los_state_joint(double p_tx_target, double p_target_rx, double u1, double u2, bool monostatic) {
  LosState s;
  s.monostatic = monostatic;
  s.tx_target_los = u1 < p_tx_target;
  s.target_rx_los = monostatic ? s.tx_target_los : (u2 < p_target_rx);
  return s;
}

struct SegmentLargeScale {
  SegmentGeometry geometry;
  bool los = true;
  double pathloss_db = 0.0;
  double shadow_fading_db = 0.0;

  double loss_db() const { return pathloss_db + shadow_fading_db; }
};

struct LargeScale {
  SegmentLargeScale seg1; // Tx - target
  SegmentLargeScale seg2; // target - Rx
  double aperture_db = 0.0;
  double coupling_loss_db = 0.0;
};

/// Calibration power-scaling factor with RCS component A, in dB.
inline double coupling_loss(double pl1_db, double pl2_db, double frequency_hz, double sigma_a_db, double sf1_db,
                            double sf2_db) {
  return pl1_db + pl2_db + aperture_db(frequency_hz) - sigma_a_db + sf1_db + sf2_db;
}

inline double coupling_loss(const LargeScale& ls, double frequency_hz, double sigma_a_db) {
  return coupling_loss(ls.seg1.pathloss_db, ls.seg2.pathloss_db, frequency_hz, sigma_a_db, ls.seg1.shadow_fading_db,
                       ls.seg2.shadow_fading_db);
}

} // namespace isac
