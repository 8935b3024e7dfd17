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

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "isacsim/campaign.hpp"

using namespace isac;

namespace {

SimulationConfig base_config() { return bind_config(parse_config("schema = 1\n")); }

Path at(double delay, double az, double power) {
  Path p;
  p.delay_s = delay;
  p.weight = power;
  p.arrival = p.departure = {90.0, az};
  return p;
}

} // namespace

TEST(Campaign, SpreadOfSinglePathIsZero) {
  const Spreads s = compute_spreads({at(1e-6, 10, 1.0)});
  EXPECT_EQ(s.ds, 0.0);
  EXPECT_EQ(s.asa, 0.0);
  EXPECT_THROW(compute_spreads({}), EmptyPathSet);
}

TEST(Campaign, DelaySpreadTwoEqualPaths) {
  const Spreads s = compute_spreads({at(0.0, 0, 1.0), at(100e-9, 0, 1.0)});
  EXPECT_NEAR(s.ds, 50e-9, 1e-18);
}

TEST(Campaign, AzimuthSpreadWrapsAround) {
  // 170 and -170 degrees are 20 degrees apart, not 340.
  const Spreads s = compute_spreads({at(0.0, 170, 1.0), at(0.0, -170, 1.0)});
  EXPECT_NEAR(s.asa, 10.0, 1e-9);
}

TEST(Campaign, KsDistance) {
  EXPECT_EQ(ks_distance({1, 2, 3}, {1, 2, 3}), 0.0);
  EXPECT_EQ(ks_distance({1, 2}, {3, 4}), 1.0);
  EXPECT_NEAR(ks_distance({1, 2, 3, 4}, {3, 4, 5, 6}), 0.5, 1e-12);
}

TEST(Campaign, Quantiles) {
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_EQ(quantile(x, 0.0), 1.0);
  EXPECT_EQ(quantile(x, 0.5), 3.0);
  EXPECT_EQ(quantile(x, 0.625), 3.5);
  const CdfResult c = make_cdf(Metric::ds, {5, 1, 3});
  EXPECT_TRUE(std::is_sorted(c.samples.begin(), c.samples.end()));
  EXPECT_EQ(c.percentiles.size(), 99u);
}

TEST(Campaign, StageOrder) {
  const SimulationConfig cfg = base_config();
  DropOptions opt;
  opt.trace = true;
  const DropResult r = DropPipeline(cfg, SensingMode::trp_monostatic).run(0, 42, opt);
  ASSERT_EQ(r.trace.size(), std::size(kStageOrder));
  for (std::size_t i = 0; i < r.trace.size(); ++i) EXPECT_EQ(r.trace[i], kStageOrder[i]);
}

TEST(Campaign, SelectsBestN) {
  SimulationConfig cfg = base_config();
  const DropResult r = DropPipeline(cfg, SensingMode::trp_trp).run(0, 5);
  ASSERT_EQ(r.links.size(), 4u);
  for (std::size_t i = 1; i < r.links.size(); ++i)
    EXPECT_LE(r.links[i - 1].large_scale.coupling_loss_db, r.links[i].large_scale.coupling_loss_db);
  for (const auto& l : r.links) EXPECT_FALSE(l.link.monostatic);
}

TEST(Campaign, CouplingLossComposition) {
  const SimulationConfig cfg = base_config();
  const DropResult r = DropPipeline(cfg, SensingMode::trp_monostatic).run(0, 8);
  for (const auto& l : r.links) {
    const auto& ls = l.large_scale;
    EXPECT_NEAR(ls.coupling_loss_db,
                ls.seg1.pathloss_db + ls.seg2.pathloss_db + aperture_db(6e9) + 12.81 + ls.seg1.shadow_fading_db +
                    ls.seg2.shadow_fading_db,
                1e-9);
    EXPECT_EQ(ls.seg1.pathloss_db, ls.seg2.pathloss_db);
  }
}

TEST(Campaign, WorkerCountDoesNotChangeResults) {
  const SimulationConfig cfg = base_config();
  CampaignSpec spec;
  spec.drops = 6;
  spec.metrics = {Metric::coupling_loss, Metric::ds};
  const CampaignResult a = run_campaign(cfg, spec);
  spec.workers = 3;
  const CampaignResult b = run_campaign(cfg, spec);
  ASSERT_EQ(a.cdfs.size(), b.cdfs.size());
  for (std::size_t k = 0; k < a.cdfs.size(); ++k) EXPECT_EQ(a.cdfs[k].samples, b.cdfs[k].samples);
}

TEST(Campaign, InfeasibleDrops) {
  SimulationConfig cfg = base_config();
  cfg.scenario.layout.n_sites = 1;
  cfg.scenario.layout.isd = 20.0;
  cfg.scenario.target_height = 1.5;
  cfg.scenario.min_dist_tx_target = 100.0;
  CampaignSpec spec;
  spec.drops = 2;
  EXPECT_THROW(run_campaign(cfg, spec), PlacementInfeasible);
}

TEST(Campaign, CirExport) {
  const SimulationConfig cfg = base_config();
  CampaignSpec spec;
  spec.drops = 2;
  spec.cir_drops = 1;
  const CampaignResult r = run_campaign(cfg, spec);
  ASSERT_FALSE(r.cir.empty());
  for (const auto& rec : r.cir) EXPECT_EQ(rec.drop, 0.0);
}

TEST(Campaign, SvgIsWellFormed) {
  const CdfResult c = make_cdf(Metric::coupling_loss, {150, 160, 170});
  const std::string svg = cdf_svg(c, "test");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
}
