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

#include <optional>
#include <string>

#include "constants.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace isac {

enum class BodyPart { arm, leg, rotor, custom };

inline std::optional<BodyPart> parse_body_part(std::string_view s) {
  if (s == "arm") return BodyPart::arm;
  if (s == "leg") return BodyPart::leg;
  if (s == "rotor") return BodyPart::rotor;
  if (s == "custom") return BodyPart::custom;
  return std::nullopt;
}

/// Harmonic oscillation of a target part. The axis is in the target's local frame.
struct MicroMotion {
  BodyPart part = BodyPart::custom;
  double amplitude = 0.0; // m
  double frequency = 0.0; // Hz
  double phase = 0.0;     // rad
  Vector3 axis{1.0, 0.0, 0.0};
};

// Illustrative values only; override them in the config.
inline MicroMotion default_micro_motion(BodyPart part) {
  switch (part) {
    case BodyPart::arm: return {part, 0.3, 1.0, 0.0, {1.0, 0.0, 0.0}};
    case BodyPart::leg: return {part, 0.4, 1.0, 0.0, {1.0, 0.0, 0.0}};
    case BodyPart::rotor: return {part, 0.1, 50.0, 0.0, {0.0, 0.0, 1.0}};
    case BodyPart::custom: return {part, 0.0, 0.0, 0.0, {1.0, 0.0, 0.0}};
  }
  return {};
}

/// Instantaneous velocity of the oscillating part, along its axis.
inline Vector3 micro_doppler_velocity(const MicroMotion& m, double t) {
  const double w = kTwoPi * m.frequency;
  return m.axis * (m.amplitude * w * std::cos(w * t + m.phase));
}

/// Displacement relative to t = 0; the time integral of micro_doppler_velocity.
inline Vector3 micro_displacement(const MicroMotion& m, double t) {
  const double w = kTwoPi * m.frequency;
  return m.axis * (m.amplitude * (std::sin(w * t + m.phase) - std::sin(m.phase)));
}

struct ScattererMotion {
  bool alpha_tx = false;
  bool alpha_rx = false;
  double d_tx = 0.0; // m/s
  double d_rx = 0.0;
};

struct ScattererMotionParams {
  double p = 0.0;       // Bernoulli mean on the Tx side
  double p_prime = 0.0; // Bernoulli mean on the Rx side
  double v_scatt = 0.0; // m/s
};

inline ScattererMotion sample_scatterer_motion(Rng& rng, double p, double p_prime, double v_scatt) {
  if (p < 0.0 || p > 1.0 || p_prime < 0.0 || p_prime > 1.0)
    throw ConfigError("scatterer motion probabilities must be in [0, 1]");
  ScattererMotion s;
  s.alpha_tx = rng.bernoulli(p);
  s.d_tx = v_scatt > 0.0 ? rng.uniform(-v_scatt, v_scatt) : 0.0;
  s.alpha_rx = rng.bernoulli(p_prime);
  s.d_rx = v_scatt > 0.0 ? rng.uniform(-v_scatt, v_scatt) : 0.0;
  return s;
}

inline ScattererMotion sample_scatterer_motion(Rng& rng, const ScattererMotionParams& p) {
  return sample_scatterer_motion(rng, p.p, p.p_prime, p.v_scatt);
}

/// Inputs of the Doppler formula for one path. Every unit vector points away
/// from the node it belongs to along the path, so a positive projection of a
/// velocity means the path is getting shorter.
struct DopplerState {
  double lambda = 1.0;
  Vector3 v_tx;
  Vector3 v_rx;
  Vector3 v_spst; // bulk velocity of the scattering point; zero for non-target paths
  Vector3 r_tx;   // departure direction at Tx
  Vector3 r_rx;   // arrival direction at Rx
  Vector3 r_spst_tx; // at the scattering point, toward the Tx side
  Vector3 r_spst_rx; // at the scattering point, toward the Rx side
  ScattererMotion motion;
  std::optional<MicroMotion> micro; // axis already rotated into the global frame
};

inline double path_doppler(const DopplerState& s, double t = 0.0) {
  Vector3 v = s.v_spst;
  if (s.micro) v += micro_doppler_velocity(*s.micro, t);
  const double rx = s.r_rx.dot(s.v_rx) + s.r_spst_rx.dot(v) + 2.0 * (s.motion.alpha_rx ? s.motion.d_rx : 0.0);
  const double tx = s.r_tx.dot(s.v_tx) + s.r_spst_tx.dot(v) + 2.0 * (s.motion.alpha_tx ? s.motion.d_tx : 0.0);
  return rx / s.lambda + tx / s.lambda;
}

/// Accumulated Doppler phase 2 pi * integral of f_D from 0 to t, in radians.
inline double doppler_phase(const DopplerState& s, double t) {
  DopplerState bulk = s;
  bulk.micro.reset();
  double cycles = path_doppler(bulk, 0.0) * t;
  if (s.micro) cycles += (s.r_spst_rx + s.r_spst_tx).dot(micro_displacement(*s.micro, t)) / s.lambda;
  return kTwoPi * cycles;
}

} // namespace isac
