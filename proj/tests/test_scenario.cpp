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

#include "isacsim/scenario.hpp"

using namespace isac;

TEST(Scenario, SiteLayout) {
  const auto s = site_positions(Layout{});
  ASSERT_EQ(s.size(), 7u);
  for (std::size_t i = 1; i < s.size(); ++i) EXPECT_NEAR(distance_2d(s[0], s[i]), 500.0, 1e-9);
  EXPECT_NEAR(s[1].x, 500.0 * std::cos(deg_to_rad(30.0)), 1e-9);
  EXPECT_EQ(s[3].z, 25.0);
}

TEST(Scenario, HexagonMembership) {
  const double r = 100.0;
  EXPECT_TRUE(in_centre_cell(0, 0, r));
  EXPECT_TRUE(in_centre_cell(99.9, 0, r));
  EXPECT_FALSE(in_centre_cell(0, 90.0, r));
  EXPECT_TRUE(in_centre_cell(0, 86.0, r));
}

TEST(Scenario, DropRespectsMinimumDistance) {
  ScenarioConfig cfg;
  cfg.num_targets = 3;
  cfg.target_height = 1.5;
  cfg.min_dist_tx_target = 20.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Drop d = generate_drop(cfg, seed);
    ASSERT_EQ(d.targets.size(), 3u);
    ASSERT_EQ(d.node_count(), 37u);
    for (const auto& t : d.targets) {
      for (std::size_t n = 0; n < d.node_count(); ++n)
        EXPECT_GE(distance(d.node(int(n)).pose.position, t.pose.position), 20.0);
      EXPECT_TRUE(in_centre_cell(t.pose.position.x, t.pose.position.y, cfg.layout.radius()));
    }
  }
}

TEST(Scenario, DropIsPureFunctionOfSeed) {
  const ScenarioConfig cfg;
  const Drop a = generate_drop(cfg, 99), b = generate_drop(cfg, 99), c = generate_drop(cfg, 100);
  EXPECT_EQ(a.targets[0].pose.position, b.targets[0].pose.position);
  EXPECT_EQ(a.uts[7].pose.position, b.uts[7].pose.position);
  EXPECT_NE(a.targets[0].pose.position, c.targets[0].pose.position);
}

TEST(Scenario, InfeasiblePlacement) {
  ScenarioConfig cfg;
  cfg.layout.n_sites = 1;
  cfg.layout.isd = 20.0;
  cfg.target_height = 1.5;
  cfg.min_dist_tx_target = 100.0;
  EXPECT_THROW(generate_drop(cfg, 1), PlacementInfeasible);
}

TEST(Scenario, CandidateCounts) {
  const Drop d = generate_drop(ScenarioConfig{}, 1);
  EXPECT_EQ(candidate_links(d, SensingMode::trp_monostatic, 0).size(), 7u);
  EXPECT_EQ(candidate_links(d, SensingMode::trp_trp, 0).size(), 21u);
  EXPECT_EQ(candidate_links(d, SensingMode::trp_ut, 0).size(), 210u);
  EXPECT_EQ(candidate_links(d, SensingMode::ut_ut, 0).size(), 435u);
  EXPECT_EQ(candidate_links(d, SensingMode::ut_monostatic, 0).size(), 30u);
}

TEST(Scenario, BestNSelection) {
  std::vector<SensingLink> links;
  for (int i = 0; i < 6; ++i) links.push_back({i, i, 0, true});
  const double loss[] = {5.0, 1.0, 3.0, 1.0, 9.0, 2.0};
  const auto sel = select_sensing_pairs(links, 3, [&](const SensingLink& l) { return loss[l.tx_node]; });
  ASSERT_EQ(sel.size(), 3u);
  EXPECT_EQ(sel[0].tx_node, 1);
  EXPECT_EQ(sel[1].tx_node, 3);
  EXPECT_EQ(sel[2].tx_node, 5);
}

TEST(Scenario, Validation) {
  ScenarioConfig cfg;
  cfg.carrier_frequency = 200e9;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = {};
  cfg.min_dist_tx_target = 0.0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}
