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
#include <sstream>

#include <gtest/gtest.h>

#include "isacsim/synthesis.hpp"

using namespace isac;

namespace {

Path make_path(PathKind kind, double delay, double power) {
  Path p;
  p.kind = kind;
  p.delay_s = delay;
  p.weight = power;
  p.departure = p.arrival = {90, 0};
  return p;
}

} // namespace

TEST(Synthesis, PartsAreScaled) {
  SynthesisConfig cfg;
  cfg.o_isac = 0.5;
  cfg.k_eo = 0.36;
  const auto ant = AntennaArray::dual_pol_isotropic();
  const Cir c = assemble_cir({1, {make_path(PathKind::target, 1e-6, 4.0)}}, {1, {make_path(PathKind::background, 2e-6, 4.0)}},
                             {1, {make_path(PathKind::eo, 3e-6, 4.0)}}, cfg, ant, ant, 0.05);
  const auto& taps = c.at(0, 0, 0);
  ASSERT_EQ(taps.size(), 3u);
  EXPECT_NEAR(std::abs(taps[0].h), 2.0 * 0.8, 1e-12);
  EXPECT_NEAR(std::abs(taps[1].h), 2.0 * 0.8 * 0.5, 1e-12);
  EXPECT_NEAR(std::abs(taps[2].h), 2.0 * 0.6, 1e-12);
  // Identity polarization couples only co-polar elements.
  EXPECT_NEAR(std::abs(c.at(0, 1, 0)[0].h), 0.0, 1e-12);
}

TEST(Synthesis, EqualDelaysMerge) {
  const auto ant = AntennaArray::dual_pol_isotropic();
  const Cir c = assemble_cir({2, {make_path(PathKind::target, 1e-6, 1.0), make_path(PathKind::target, 1e-6, 1.0)}},
                             {2, {}}, {2, {}}, SynthesisConfig{}, ant, ant, 0.05);
  ASSERT_EQ(c.at(0, 0, 0).size(), 1u);
  EXPECT_NEAR(std::abs(c.at(0, 0, 0)[0].h), 2.0, 1e-12);
}

TEST(Synthesis, InconsistentLinkRejected) {
  const auto ant = AntennaArray::dual_pol_isotropic();
  EXPECT_THROW(assemble_cir({1, {}}, {2, {}}, {1, {}}, SynthesisConfig{}, ant, ant, 0.05), InconsistentLink);
}

TEST(Synthesis, DopplerRotatesPhaseOverTime) {
  SynthesisConfig cfg;
  cfg.time = {0.0, 1e-3, 2};
  Path p = make_path(PathKind::target, 1e-6, 1.0);
  p.doppler_hz = 250.0;
  const auto ant = AntennaArray::ula(1, 0.0);
  const Cir c = assemble_cir({1, {p}}, {1, {}}, {1, {}}, cfg, ant, ant, 0.05);
  const double dphi = std::arg(c.at(0, 0, 1)[0].h / c.at(0, 0, 0)[0].h);
  EXPECT_NEAR(dphi, std::remainder(kTwoPi * 250.0 * 1e-3, kTwoPi), 1e-9);
}

TEST(Synthesis, ArrayPhase) {
  const double lambda = 0.05;
  const auto tx = AntennaArray::ula(1, 0.0);
  const auto rx = AntennaArray::ula(2, lambda / 2.0);
  Path p = make_path(PathKind::target, 1e-6, 1.0);
  p.arrival = {90, 90};
  const Cir c = assemble_cir({1, {p}}, {1, {}}, {1, {}}, SynthesisConfig{}, tx, rx, lambda);
  EXPECT_NEAR(std::abs(std::arg(c.at(1, 0, 0)[0].h / c.at(0, 0, 0)[0].h)), kPi, 1e-9);
}

TEST(Synthesis, BackgroundNormalization) {
  const PathSet t{make_path(PathKind::target, 0, 2.0)};
  const PathSet b{make_path(PathKind::background, 0, 8.0)};
  EXPECT_EQ(normalize_background(t, b, BackgroundNormalization::none), 1.0);
  EXPECT_NEAR(normalize_background(t, b, BackgroundNormalization::power_ratio, 1.0), 0.5, 1e-12);
  EXPECT_THROW(normalize_background({}, b, BackgroundNormalization::power_ratio), EmptyPathSet);
}

TEST(Synthesis, ScattererExplainsDelay) {
  const SegmentEnds e{{0, 0, 0}, {100, 0, 0}};
  const SphericalAngle dep{90, 60};
  const double tau = 80e-9;
  const Vector3 s = scatterer_position(e, tau, dep);
  EXPECT_NEAR((distance(e.tx, s) + distance(s, e.rx) - 100.0) / kSpeedOfLight, tau, 1e-15);
  EXPECT_NEAR(direction_angle(s - e.tx).azimuth, 60.0, 1e-9);
}

TEST(Synthesis, ShareClusters) {
  Rng rng(3);
  const ClusterSet comm = generate_clusters(default_lsp(false), rng);
  const ClusterSet sens = generate_clusters(default_lsp(false), rng);
  const SegmentEnds ce{{0, 0, 25}, {150, 40, 1.5}}, se{{0, 0, 25}, {80, 120, 100}};
  const SharedClusters sh = share_clusters(comm, ce, sens, se, 3, rng);
  ASSERT_EQ(sh.sens_clusters.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    const Vector3 s = sh.scatterers[k];
    const double expect = (distance(ce.tx, s) + distance(s, ce.rx) - distance(ce.tx, ce.rx)) / kSpeedOfLight;
    EXPECT_NEAR(sh.comm.delays[std::size_t(sh.comm_clusters[k])], expect, 1e-15);
  }
  EXPECT_THROW(share_clusters(comm, ce, sens, se, 99, rng), TooManyShared);
}

TEST(Synthesis, CirSerialization) {
  Cir c;
  c.n_rx = c.n_tx = 1;
  c.times = {0.0};
  c.taps = {{{1e-6, {0.5, -0.25}}}};
  c.drop = 3;
  c.link_id = 7;
  const auto rec = cir_records(c);
  ASSERT_EQ(rec.size(), 1u);
  std::ostringstream csv;
  write_cir_csv_row(csv, rec[0]);
  EXPECT_EQ(csv.str(), "3,7,0,0,0,0,9.9999999999999995e-07,0.5,-0.25\n");
  std::ostringstream bin;
  write_cir_binary(bin, rec);
  const std::string b = bin.str();
  ASSERT_EQ(b.size(), 8u + 8u + 9u * 8u);
  EXPECT_EQ(b.substr(0, 8), "ISACCIR1");
  EXPECT_EQ(b[8], 1);
}
