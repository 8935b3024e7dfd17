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

#include <gtest/gtest.h>

#include "isacsim/geometry.hpp"

using namespace isac;

TEST(Geometry, WrapAzimuth) {
  EXPECT_DOUBLE_EQ(wrap_azimuth(0.0), 0.0);
  EXPECT_DOUBLE_EQ(wrap_azimuth(180.0), -180.0);
  EXPECT_DOUBLE_EQ(wrap_azimuth(-180.0), -180.0);
  EXPECT_DOUBLE_EQ(wrap_azimuth(370.0), 10.0);
  EXPECT_DOUBLE_EQ(wrap_azimuth(-190.0), 170.0);
}

TEST(Geometry, MakeAngleFoldsZenith) {
  const SphericalAngle a = make_angle(190.0, 0.0);
  EXPECT_NEAR(a.zenith, 170.0, 1e-12);
  EXPECT_NEAR(a.azimuth, -180.0, 1e-12);
  const SphericalAngle b = make_angle(-10.0, 30.0);
  EXPECT_NEAR(b.zenith, 10.0, 1e-12);
  EXPECT_NEAR(b.azimuth, -150.0, 1e-12);
}

TEST(Geometry, DirectionRoundTrip) {
  for (double z = 5.0; z < 180.0; z += 25.0)
    for (double a = -175.0; a < 180.0; a += 35.0) {
      const SphericalAngle back = direction_angle(spherical_unit_vector({z, a}) * 3.0);
      EXPECT_NEAR(back.zenith, z, 1e-9);
      EXPECT_NEAR(back.azimuth, a, 1e-9);
    }
  EXPECT_NEAR(direction_angle({0, 0, 1}).zenith, 0.0, 1e-12);
  EXPECT_NEAR(direction_angle({0, 1, 0}).azimuth, 90.0, 1e-12);
}

TEST(Geometry, LocalFrame) {
  const Pose p{{10, 0, 5}, 90.0};
  const Vector3 g = local_to_global(p, {1, 0, 0});
  EXPECT_NEAR(g.x, 10.0, 1e-12);
  EXPECT_NEAR(g.y, 1.0, 1e-12);
  const SphericalAngle l = gcs_to_lcs({80.0, 100.0}, p);
  EXPECT_DOUBLE_EQ(l.azimuth, 10.0);
  EXPECT_DOUBLE_EQ(lcs_to_gcs(l, p).azimuth, 100.0);
}

TEST(Geometry, BisectorIdenticalIsExact) {
  const SphericalAngle a{73.3, -121.7};
  const BisectorResult r = bisector_and_beta(a, a);
  EXPECT_EQ(r.bisector, a);
  EXPECT_EQ(r.beta, 0.0);
}

TEST(Geometry, BisectorOfPerpendicularDirections) {
  const BisectorResult r = bisector_and_beta({90.0, 0.0}, {90.0, 90.0});
  EXPECT_NEAR(r.beta, 90.0, 1e-9);
  EXPECT_NEAR(r.bisector.azimuth, 45.0, 1e-9);
  EXPECT_NEAR(r.bisector.zenith, 90.0, 1e-9);
}

TEST(Geometry, BisectorAntipodalIsDegenerate) {
  const BisectorResult r = bisector_and_beta({90.0, 0.0}, {90.0, -180.0});
  EXPECT_TRUE(r.degenerate);
  EXPECT_EQ(r.beta, 180.0);
  EXPECT_NEAR(r.bisector.zenith, 90.0, 1e-9);
  EXPECT_NEAR(r.bisector.azimuth, -90.0, 1e-9);
}
