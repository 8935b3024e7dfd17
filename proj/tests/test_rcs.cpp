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

#include <cmath>

#include <gtest/gtest.h>

#include "isacsim/rcs.hpp"

using namespace isac;

TEST(Rcs, LargeUavFaceCentres) {
  const RcsModel m = builtin_rcs_model(TargetType::uav_large);
  EXPECT_NEAR(sigma_md_mono_db(m, {90, 90}), 7.43, 1e-9);
  EXPECT_NEAR(sigma_md_mono_db(m, {90, 180}), 3.99, 1e-9);
  EXPECT_NEAR(sigma_md_mono_db(m, {90, -90}), 7.43, 1e-9);
  EXPECT_NEAR(sigma_md_mono_db(m, {90, 0}), 1.02, 1e-9);
  EXPECT_NEAR(sigma_md_mono_db(m, {180, 0}), 13.55, 1e-9);
  EXPECT_NEAR(sigma_md_mono_db(m, {0, 0}), 13.55, 1e-9);
}

TEST(Rcs, FacePatternFloorsAtSigmaMax) {
  const RcsModel m = builtin_rcs_model(TargetType::uav_large);
  const FaceParams& left = face_by_id(m, FaceId::left);
  // Far outside the lobe the pattern sits at G_max - sigma_max.
  EXPECT_NEAR(face_pattern_db(left, {50.0, 135.0}), left.g_max_db - left.sigma_max_db, 1e-12);
  EXPECT_LT(face_pattern_db(left, {90.0, 95.0}), left.g_max_db);
}

TEST(Rcs, FaceSelectionCoversSphere) {
  const RcsModel m = builtin_rcs_model(TargetType::vehicle);
  for (int z = 0; z <= 180; z += 5)
    for (int a = -180; a < 180; a += 5) EXPECT_NO_THROW(face_for(m, {double(z), double(a)}));
  EXPECT_EQ(face_for(m, {90.0, 44.9}).id, FaceId::front);
  EXPECT_EQ(face_for(m, {90.0, 45.0}).id, FaceId::left);
  EXPECT_EQ(face_for(m, {135.0, 0.0}).id, FaceId::bottom);
  EXPECT_EQ(face_for(m, {44.0, 0.0}).id, FaceId::roof);
}

TEST(Rcs, MissingFaceThrows) {
  RcsModel m = builtin_rcs_model(TargetType::uav_large);
  m.faces.resize(1);
  EXPECT_THROW(face_for(m, {90.0, 0.0}), NoFaceCovers);
}

TEST(Rcs, AngleIndependentTargets) {
  EXPECT_DOUBLE_EQ(sigma_md_mono_db(builtin_rcs_model(TargetType::uav_small), {12, 34}), -12.81);
  EXPECT_DOUBLE_EQ(sigma_md_mono_db(builtin_rcs_model(TargetType::human_m1), {150, -99}), -1.37);
}

TEST(Rcs, BistaticSmallUavBackscatterAndForward) {
  const RcsModel m = builtin_rcs_model(TargetType::uav_small);
  EXPECT_NEAR(sigma_md_bistatic_db(m, {90, 0}, {90, -180}), -15.81, 1e-9);
  EXPECT_NEAR(sigma_md_bistatic_db(m, {90, 0}, {90, 90}), -12.81 - 3.0 * std::sin(deg_to_rad(45.0)), 1e-9);
}

TEST(Rcs, BistaticLargeUavCorrection) {
  const RcsModel m = builtin_rcs_model(TargetType::uav_large);
  // Bisector at the left-face centre with beta = 60 degrees.
  const double v = sigma_md_bistatic_db(m, {90, 60}, {90, 120});
  const double expect = 7.43 - 6.05 * std::sin(1.33 * deg_to_rad(30.0)) + 5.0 * std::log10(std::cos(deg_to_rad(30.0)));
  EXPECT_NEAR(v, std::max(expect, 7.43 - 14.30), 1e-9);
}

TEST(Rcs, BistaticReducesToMonostatic) {
  for (TargetType t : {TargetType::uav_small, TargetType::uav_large, TargetType::human_m1, TargetType::human_m2,
                       TargetType::vehicle, TargetType::agv}) {
    const RcsModel m = builtin_rcs_model(t);
    for (int z = 0; z <= 180; z += 15)
      for (int a = -180; a < 180; a += 15) {
        const SphericalAngle ang{double(z), double(a)};
        EXPECT_EQ(sigma_md_bistatic_db(m, ang, ang), sigma_md_mono_db(m, ang));
      }
  }
}

TEST(Rcs, SigmaSMeanCorrection) {
  EXPECT_NEAR(sigma_s_mean_db(3.74), -1.6103, 1e-4);
  Rng rng(1);
  EXPECT_EQ(sample_sigma_s(rng, 0.0), 1.0);
}

TEST(Rcs, LinearValues) {
  Rng rng(1);
  RcsModel small = builtin_rcs_model(TargetType::uav_small);
  small.sigma_s_std_db = 0.0;
  EXPECT_NEAR(rcs_linear(small, rng, {90, 0}, {90, 0}), 0.05236, 1e-5);
  RcsModel large = builtin_rcs_model(TargetType::uav_large);
  EXPECT_NEAR(rcs_linear(large, rng, {90, 90}, {90, 90}), 5.534, 1e-3);
}

TEST(Rcs, CpmStructure) {
  Rng rng(9);
  const Cpm c = sample_cpm(rng, 100.0);
  EXPECT_NEAR(std::abs(c.tt), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c.pp), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c.tp), 0.1, 1e-12);
  EXPECT_NEAR(std::abs(c.pt), 0.1, 1e-12);
}

TEST(Rcs, MultiSpstLayout) {
  const RcsModel m = builtin_rcs_model(TargetType::vehicle, SpstMode::multi);
  const auto s = spst_layout(m);
  ASSERT_EQ(s.size(), 5u);
  EXPECT_NEAR(s[0].offset.x, 2.4, 1e-12);
  EXPECT_EQ(*s[4].face, FaceId::roof);
  EXPECT_THROW(builtin_rcs_model(TargetType::uav_small, SpstMode::multi), ConfigError);
}
