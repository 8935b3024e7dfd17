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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "background_channel.hpp"
#include "config.hpp"
#include "doppler.hpp"
#include "eo.hpp"
#include "large_scale.hpp"
#include "path.hpp"
#include "random.hpp"
#include "scenario.hpp"
#include "spatial_consistency.hpp"
#include "synthesis.hpp"
#include "target_channel.hpp"

namespace isac {

// ---------------------------------------------------------------------------
// Statistics
// ---------------------------------------------------------------------------

struct Spreads {
  double ds = 0.0;  // s
  double asa = 0.0; // deg
  double asd = 0.0;
  double zsa = 0.0;
  double zsd = 0.0;
};

/// Power-weighted RMS spread of linear values.
inline double rms_spread(const std::vector<std::pair<double, double>>& vw) {
  double w = 0.0, m = 0.0;
  for (const auto& [v, p] : vw) {
    w += p;
    m += p * v;
  }
  m /= w;
  double s = 0.0;
  for (const auto& [v, p] : vw) s += p * (v - m) * (v - m);
  return std::sqrt(std::max(s / w, 0.0));
}

/// Circular azimuth spread: the smallest linear RMS spread over all ways of
/// cutting the circle between two neighbouring angles.
inline double circular_spread_deg(std::vector<std::pair<double, double>> vw) {
  const std::size_t n = vw.size();
  if (n <= 1) return 0.0;
  for (auto& [v, p] : vw) v = wrap_azimuth(v);
  std::sort(vw.begin(), vw.end());
  double w = 0.0, s1 = 0.0, s2 = 0.0;
  for (const auto& [v, p] : vw) {
    w += p;
    s1 += p * v;
    s2 += p * v * v;
  }
  double best = std::numeric_limits<double>::infinity();
  // Cut k moves the first k angles up by 360 degrees.
  for (std::size_t k = 0; k < n; ++k) {
    if (k > 0) {
      const auto& [v, p] = vw[k - 1];
      // (v + 360)^2 - v^2 = 720 v + 360^2
      s2 += p * (720.0 * v + 129600.0);
      s1 += p * 360.0;
    }
    const double mean = s1 / w;
    best = std::min(best, s2 / w - mean * mean);
  }
  return std::sqrt(std::max(best, 0.0));
}

inline Spreads compute_spreads(const PathSet& paths) {
  if (paths.empty()) throw EmptyPathSet("spreads of an empty path set");
  std::vector<std::pair<double, double>> tau, aoa, aod, zoa, zod;
  for (const auto& p : paths) {
    const double w = p.power_linear();
    tau.emplace_back(p.delay_s, w);
    aoa.emplace_back(p.arrival.azimuth, w);
    aod.emplace_back(p.departure.azimuth, w);
    zoa.emplace_back(p.arrival.zenith, w);
    zod.emplace_back(p.departure.zenith, w);
  }
  return {rms_spread(tau), circular_spread_deg(aoa), circular_spread_deg(aod), rms_spread(zoa), rms_spread(zod)};
}

/// Two-sample Kolmogorov-Smirnov statistic.
inline double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) return 1.0;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(double(i) / a.size() - double(j) / b.size()));
  }
  return d;
}

/// Linear-interpolated quantile of sorted samples, q in [0, 1].
inline double quantile(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  const double h = q * double(sorted.size() - 1);
  const std::size_t lo = std::size_t(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - double(lo)) * (sorted[hi] - sorted[lo]);
}

struct CdfResult {
  Metric metric = Metric::coupling_loss;
  std::vector<double> samples;     // sorted
  std::vector<double> percentiles; // 1..99
};

inline CdfResult make_cdf(Metric m, std::vector<double> samples) {
  CdfResult r;
  r.metric = m;
  std::sort(samples.begin(), samples.end());
  r.samples = std::move(samples);
  for (int p = 1; p <= 99; ++p) r.percentiles.push_back(quantile(r.samples, p / 100.0));
  return r;
}

// ---------------------------------------------------------------------------
// Drop pipeline
// ---------------------------------------------------------------------------

inline constexpr const char* kStageOrder[] = {
    "los_assignment", "pathloss",   "pathloss_concatenation", "large_scale",   "delays",
    "cluster_powers", "angles",     "rcs",                    "coupling",      "weak_path_dropping",
    "xpr",            "initial_phases", "monostatic_background", "micro_doppler", "coefficients",
    "apply_large_scale", "combine",
};

struct LinkResult {
  SensingLink link;
  std::uint64_t link_id = 0;
  LosState los;
  LargeScale large_scale;
  TargetChannel target;
  PathSet background;
  PathSet eo;
  double o_isac = 1.0;
  std::optional<Cir> cir;
};

struct DropResult {
  std::uint64_t index = 0;
  std::uint64_t seed = 0;
  bool infeasible = false;
  std::string infeasible_reason;
  std::vector<LinkResult> links;
  std::vector<std::string> trace;
};

struct DropOptions {
  bool keep_cir = false;
  bool trace = false;
  bool keep_segments = true; // per-SPST segment channels; campaigns drop them to keep memory flat
};

class DropPipeline {
public:
  DropPipeline(const SimulationConfig& cfg, SensingMode mode) : cfg_(cfg), mode_(mode) {}

  SensingMode mode() const { return mode_; }

  DropResult run(std::uint64_t index, std::uint64_t seed, const DropOptions& opt = {}) const {
    DropResult res;
    res.index = index;
    res.seed = seed;
    Drop drop;
    try {
      drop = generate_drop(cfg_.scenario, seed);
    } catch (const PlacementInfeasible& e) {
      res.infeasible = true;
      res.infeasible_reason = e.what();
      return res;
    }
    if (drop.targets.empty()) throw ConfigError("calibration campaigns need at least one target");
    auto trace = [&](const char* stage) {
      if (opt.trace) res.trace.emplace_back(stage);
    };

    FieldBank bank(seed, cfg_.correlation, field_region(), is_aerial_scenario(cfg_.scenario.scenario));
    const double f = cfg_.scenario.carrier_frequency;
    const double aperture = aperture_db(f);

    // Large-scale stage for every candidate pair, then best-N selection.
    struct Candidate {
      SensingLink link;
      LosState los;
      LargeScale ls;
      double coupling = 0.0;
    };
    std::vector<Candidate> cands;
    bool first = true;
    for (const auto& link : candidate_links(drop, mode_, 0)) {
      Candidate c{link, {}, {}, 0.0};
      const TargetState& tgt = drop.targets[0];
      const Vector3 tx = drop.node(link.tx_node).pose.position;
      const Vector3 rx = drop.node(link.rx_node).pose.position;
      const bool aerial = is_uav(tgt.type);
      c.ls.seg1.geometry = SegmentGeometry::between(tx, tgt.pose.position, aerial);
      c.ls.seg2.geometry = SegmentGeometry::between(rx, tgt.pose.position, aerial);
      const std::uint64_t lseed = link_seed(seed, link);

      if (first) trace("los_assignment");
      const double p1 = los_probability(c.ls.seg1.geometry, cfg_.propagation);
      const double p2 = los_probability(c.ls.seg2.geometry, cfg_.propagation);
      const double u1 = los_uniform(bank, drop, link, 1, p1, tgt.pose.position, lseed);
      const double u2 = link.monostatic ? u1 : los_uniform(bank, drop, link, 2, p2, tgt.pose.position, lseed);
      c.los = los_state_joint(p1, p2, u1, u2, link.monostatic);
      c.ls.seg1.los = c.los.tx_target_los;
      c.ls.seg2.los = c.los.target_rx_los;

      if (first) trace("pathloss");
      c.ls.seg1.pathloss_db = pathloss_segment(c.ls.seg1.geometry, f, cfg_.propagation, c.ls.seg1.los);
      c.ls.seg2.pathloss_db = pathloss_segment(c.ls.seg2.geometry, f, cfg_.propagation, c.ls.seg2.los);
      if (first) trace("pathloss_concatenation");
      c.ls.aperture_db = aperture;

      if (first) trace("large_scale");
      Rng sf = Rng::keyed({lseed, std::uint64_t(Stream::shadow_fading)});
      c.ls.seg1.shadow_fading_db = sf.normal(0.0, shadow_fading_std(c.ls.seg1.geometry, cfg_.propagation, c.ls.seg1.los));
      c.ls.seg2.shadow_fading_db = sf.normal(0.0, shadow_fading_std(c.ls.seg2.geometry, cfg_.propagation, c.ls.seg2.los));
      c.ls.coupling_loss_db = coupling_loss(c.ls, f, cfg_.component_a_db());
      c.coupling = c.ls.coupling_loss_db;
      cands.push_back(c);
      first = false;
    }

    std::vector<SensingLink> links;
    for (const auto& c : cands) links.push_back(c.link);
    std::map<std::pair<int, int>, const Candidate*> by_pair;
    for (const auto& c : cands) by_pair[{c.link.tx_node, c.link.rx_node}] = &c;
    const auto selected = select_sensing_pairs(links, cfg_.best_n, [&](const SensingLink& l) {
      return by_pair.at({l.tx_node, l.rx_node})->coupling;
    });

    first = true;
    for (const auto& link : selected) {
      const Candidate& c = *by_pair.at({link.tx_node, link.rx_node});
      res.links.push_back(small_scale_stage(drop, c.link, c.los, c.ls, seed, opt, first ? &res.trace : nullptr));
      first = false;
    }
    return res;
  }

private:
  static bool is_uav(TargetType t) { return t == TargetType::uav_small || t == TargetType::uav_large; }

  static std::uint64_t link_seed(std::uint64_t drop_seed, const SensingLink& l) {
    return mix_keys({drop_seed, 0x4C494E4Bull, std::uint64_t(l.tx_node), std::uint64_t(l.rx_node),
                     std::uint64_t(l.target.value_or(-1))});
  }

  FieldRegion field_region() const {
    const double r = cfg_.scenario.layout.radius() + 20.0;
    const double top = std::max({cfg_.scenario.target_height, cfg_.scenario.ut_height, cfg_.scenario.layout.trp_height});
    return {{-r, -r, 0.0}, {r, r, top + 10.0}};
  }

  double los_uniform(FieldBank& bank, const Drop& drop, const SensingLink& link, int segment, double p,
                     const Vector3& target_pos, std::uint64_t lseed) const {
    Rng rng = Rng::keyed({lseed, std::uint64_t(Stream::los), std::uint64_t(segment)});
    const double u = rng.uniform();
    if (p <= 0.0 || p >= 1.0 || !cfg_.spatial_consistency) return u;
    LinkInfo info;
    info.link_id = mix_keys({lseed, std::uint64_t(segment)});
    info.scenario = cfg_.scenario.scenario;
    info.mode = mode_;
    info.role = segment == 1 ? LinkRole::tx_spst : LinkRole::spst_rx;
    info.anchor_node = segment == 1 ? link.tx_node : link.rx_node;
    info.anchor_is_trp = drop.is_trp(info.anchor_node);
    // Excluded links would each need a private field; an independent draw has the same law.
    if (detail::excluded_from_all(info)) return u;
    return bank.uniform(FieldParam::los_state, info, target_pos);
  }

  std::vector<std::optional<MicroMotion>> micro_for(const TargetState& t, std::size_t n_spst) const {
    std::vector<std::optional<MicroMotion>> out(n_spst);
    for (const auto& m : cfg_.micro) {
      if (m.spst < 0 || std::size_t(m.spst) >= n_spst) continue;
      MicroMotion g = m.motion;
      g.axis = rotate_z(g.axis, t.pose.heading);
      out[std::size_t(m.spst)] = g;
    }
    return out;
  }

  LinkResult small_scale_stage(const Drop& drop, const SensingLink& link, const LosState& los, const LargeScale& ls,
                               std::uint64_t seed, const DropOptions& opt, std::vector<std::string>* trace_out) const {
    auto trace = [&](const char* stage) {
      if (opt.trace && trace_out) trace_out->emplace_back(stage);
    };
    const double f = cfg_.scenario.carrier_frequency;
    const double lambda = wavelength(f);
    const std::uint64_t lseed = link_seed(seed, link);
    const NodeState& txn = drop.node(link.tx_node);
    const NodeState& rxn = drop.node(link.rx_node);

    LinkResult out;
    out.link = link;
    out.link_id = std::uint64_t(link.tx_node) * 1000u + std::uint64_t(link.rx_node);
    out.los = los;
    out.large_scale = ls;

    // Targets: the sensing targets followed by type-1 environment objects.
    std::vector<TargetState> targets = drop.targets;
    for (const auto& eo : drop.eos)
      if (eo.kind == EoKind::type1) targets.push_back({eo.pose, {}, *eo.target_type});

    trace("delays");
    trace("cluster_powers");
    trace("angles");
    trace("rcs");
    trace("coupling");
    trace("weak_path_dropping");
    std::vector<PathSet> per_target;
    std::vector<TargetChannel> channels;
    std::vector<RcsModel> models;
    for (const auto& t : targets) models.push_back(models.size() < drop.targets.size() ? cfg_.rcs : builtin_rcs_model(t.type));
    for (std::size_t k = 0; k < targets.size(); ++k) {
      const TargetState& t = targets[k];
      const RcsModel& model = models[k];
      TargetLink tl;
      tl.tx = txn.pose.position;
      tl.rx = rxn.pose.position;
      tl.monostatic = link.monostatic;
      tl.target_pose = t.pose;
      tl.target = int(k);
      tl.rcs = &model;
      tl.spsts = spst_layout(model);
      tl.los = los;
      tl.frequency_hz = f;
      tl.lsp_los = cfg_.lsp_los;
      tl.lsp_nlos = cfg_.lsp_nlos;
      if (k == 0) {
        tl.seg1_gain_db = -ls.seg1.loss_db();
        tl.seg2_gain_db = -ls.seg2.loss_db();
      } else {
        // Additional targets share the link's LoS state and carry no shadow fading.
        const bool aerial = is_uav(t.type);
        const auto g1 = SegmentGeometry::between(tl.tx, t.pose.position, aerial);
        const auto g2 = SegmentGeometry::between(tl.rx, t.pose.position, aerial);
        tl.seg1_gain_db = -pathloss_segment(g1, f, cfg_.propagation, los.tx_target_los);
        tl.seg2_gain_db = -pathloss_segment(g2, f, cfg_.propagation, los.target_rx_los);
      }
      TargetChannel tc = build_target_channel(tl, cfg_.concat, mix_keys({lseed, k}));
      channels.push_back(std::move(tc));
    }

    trace("xpr");
    trace("initial_phases");
    Rng pol_rng = Rng::keyed({lseed, std::uint64_t(Stream::polarization)});
    for (std::size_t k = 0; k < channels.size(); ++k) apply_polarization(channels[k], models[k], pol_rng);

    trace("monostatic_background");
    Rng bg_rng = Rng::keyed({lseed, std::uint64_t(Stream::background)});
    if (cfg_.background) {
      if (link.monostatic) {
        const bool on_trp = drop.is_trp(link.tx_node);
        const MrpParams params = cfg_.mrp ? *cfg_.mrp : mrp_params(on_trp ? MrpNode::trp : MrpNode::ut, txn.pose.position.z);
        out.background =
            monostatic_background(txn.pose.position, params, cfg_.lsp_nlos, bg_rng, f, cfg_.propagation, cfg_.background_cfg)
                .paths;
      } else {
        const SegmentGeometry g = SegmentGeometry::between(txn.pose.position, rxn.pose.position, false);
        const bool bg_los = bg_rng.uniform() < los_probability(g, cfg_.propagation);
        const double gain = -(pathloss_segment(g, f, cfg_.propagation, bg_los) +
                              bg_rng.normal(0.0, shadow_fading_std(g, cfg_.propagation, bg_los)));
        out.background = bistatic_background(txn.pose.position, rxn.pose.position, bg_los ? cfg_.lsp_los : cfg_.lsp_nlos,
                                             bg_los, gain, bg_rng);
      }
    }
    out.eo = build_eo_channel(txn.pose.position, rxn.pose.position, drop.eos, cfg_.synthesis.k_eo, f);

    trace("micro_doppler");
    Rng dop_rng = Rng::keyed({lseed, std::uint64_t(Stream::doppler)});
    for (std::size_t k = 0; k < channels.size(); ++k) {
      DopplerContext dc;
      dc.lambda = lambda;
      dc.v_tx = txn.velocity;
      dc.v_rx = rxn.velocity;
      dc.v_target = targets[k].velocity;
      dc.scatterers = cfg_.scatterers;
      if (k < drop.targets.size()) dc.micro = micro_for(targets[k], channels[k].spsts.size());
      apply_doppler(channels[k].paths, dc, dop_rng);
      per_target.push_back(channels[k].paths);
    }
    {
      DopplerContext dc;
      dc.lambda = lambda;
      dc.v_tx = txn.velocity;
      dc.v_rx = rxn.velocity;
      dc.scatterers = cfg_.scatterers;
      apply_doppler(out.background, dc, dop_rng);
      apply_doppler(out.eo, dc, dop_rng);
    }

    out.target.paths = multi_target_superpose(per_target);
    if (!channels.empty()) out.target.spsts = std::move(channels[0].spsts);

    trace("coefficients");
    trace("apply_large_scale");
    trace("combine");
    out.o_isac = cfg_.background_normalization == BackgroundNormalization::none || out.target.paths.empty() ||
                         out.background.empty()
                     ? cfg_.synthesis.o_isac
                     : normalize_background(out.target.paths, out.background, cfg_.background_normalization,
                                            cfg_.background_power_ratio);
    if (opt.keep_cir) {
      SynthesisConfig sc = cfg_.synthesis;
      sc.o_isac = out.o_isac;
      const AntennaArray ant = AntennaArray::dual_pol_isotropic();
      Cir cir = assemble_cir({out.link_id, out.target.paths}, {out.link_id, out.background}, {out.link_id, out.eo}, sc,
                             ant, ant, lambda);
      cir.drop = 0;
      cir.mode = to_string(mode_);
      out.cir = std::move(cir);
    }
    if (!opt.keep_segments) {
      out.target.spsts.clear();
    }
    return out;
  }

  const SimulationConfig& cfg_;
  SensingMode mode_;
};

// ---------------------------------------------------------------------------
// Campaign
// ---------------------------------------------------------------------------

struct CampaignSpec {
  std::uint64_t seed = 1;
  int drops = 100;
  int workers = 1;
  std::vector<Metric> metrics{Metric::coupling_loss};
  SensingMode mode = SensingMode::trp_monostatic;
  int cir_drops = 0; // CIRs are kept for the first cir_drops drops
  bool trace = false;
};

struct CampaignResult {
  std::vector<CdfResult> cdfs;
  int drops = 0;
  int infeasible_drops = 0;
  std::vector<CirRecord> cir;
  std::vector<std::string> trace; // stage trace of the first feasible drop
};

inline std::uint64_t drop_seed(std::uint64_t seed, std::uint64_t drop) { return mix_keys({seed, drop}); }

inline double metric_value(Metric m, const LinkResult& l, bool& ok) {
  ok = true;
  if (m == Metric::coupling_loss) return l.large_scale.coupling_loss_db;
  if (l.target.paths.empty()) {
    ok = false;
    return 0.0;
  }
  const Spreads s = compute_spreads(l.target.paths);
  switch (m) {
    case Metric::ds: return s.ds;
    case Metric::asa: return s.asa;
    case Metric::asd: return s.asd;
    case Metric::zsa: return s.zsa;
    case Metric::zsd: return s.zsd;
    case Metric::coupling_loss: break;
  }
  return 0.0;
}

namespace detail {

struct DropSummary {
  bool infeasible = false;
  std::vector<std::string> trace;
  std::vector<std::vector<double>> values; // per metric
  std::vector<CirRecord> cir;
};

inline DropSummary summarize(DropResult&& r, const std::vector<Metric>& metrics) {
  DropSummary s;
  s.infeasible = r.infeasible;
  s.trace = std::move(r.trace);
  s.values.resize(metrics.size());
  for (auto& l : r.links) {
    for (std::size_t k = 0; k < metrics.size(); ++k) {
      bool ok = false;
      const double v = metric_value(metrics[k], l, ok);
      if (ok) s.values[k].push_back(v);
    }
    if (l.cir) {
      l.cir->drop = r.index;
      auto rec = cir_records(*l.cir);
      s.cir.insert(s.cir.end(), rec.begin(), rec.end());
    }
  }
  return s;
}

} // namespace detail

/// Runs all drops on a worker pool. Results are gathered in drop order, so the
/// output does not depend on the worker count.
inline CampaignResult run_campaign(const SimulationConfig& cfg, const CampaignSpec& spec) {
  if (spec.drops < 1) throw ConfigError("campaign needs at least one drop");
  const DropPipeline pipeline(cfg, spec.mode);
  const std::size_t n = std::size_t(spec.drops);
  std::vector<detail::DropSummary> results(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        DropOptions opt;
        opt.keep_cir = int(i) < spec.cir_drops;
        opt.trace = spec.trace;
        opt.keep_segments = false;
        results[i] = detail::summarize(pipeline.run(i, drop_seed(spec.seed, i), opt), spec.metrics);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const int workers = std::max(1, std::min<int>(spec.workers, spec.drops));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  CampaignResult out;
  out.drops = spec.drops;
  std::vector<std::vector<double>> samples(spec.metrics.size());
  for (auto& r : results) {
    if (r.infeasible) {
      ++out.infeasible_drops;
      continue;
    }
    if (out.trace.empty()) out.trace = std::move(r.trace);
    for (std::size_t k = 0; k < samples.size(); ++k) samples[k].insert(samples[k].end(), r.values[k].begin(), r.values[k].end());
    out.cir.insert(out.cir.end(), r.cir.begin(), r.cir.end());
  }
  if (out.infeasible_drops == spec.drops) throw PlacementInfeasible("every drop failed placement");
  for (std::size_t k = 0; k < spec.metrics.size(); ++k) out.cdfs.push_back(make_cdf(spec.metrics[k], samples[k]));
  return out;
}

// ---------------------------------------------------------------------------
// Output
// ---------------------------------------------------------------------------

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline std::string metric_unit(Metric m) {
  switch (m) {
    case Metric::coupling_loss: return "dB";
    case Metric::ds: return "s";
    default: return "deg";
  }
}

/// Step-free polyline of the empirical CDF.
inline std::string cdf_svg(const CdfResult& cdf, const std::string& title) {
  const double w = 640, h = 400, ml = 60, mr = 20, mt = 30, mb = 50;
  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"400\" viewBox=\"0 0 640 400\">\n";
  s += "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n";
  char buf[256];
  std::snprintf(buf, sizeof buf, "<text x=\"320\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"14\">%s</text>\n",
                title.c_str());
  s += buf;
  const auto& x = cdf.samples;
  if (!x.empty()) {
    double lo = x.front(), hi = x.back();
    if (hi == lo) {
      lo -= 1.0;
      hi += 1.0;
    }
    auto px = [&](double v) { return ml + (v - lo) / (hi - lo) * (w - ml - mr); };
    auto py = [&](double p) { return h - mb - p * (h - mt - mb); };
    std::snprintf(buf, sizeof buf, "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" stroke=\"#888\"/>\n", ml, mt,
                  w - ml - mr, h - mt - mb);
    s += buf;
    for (int k = 0; k <= 4; ++k) {
      const double v = lo + (hi - lo) * k / 4.0;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">%.4g</text>\n",
                    px(v), h - mb + 16, v);
      s += buf;
      std::snprintf(buf, sizeof buf,
                    "<text x=\"%.1f\" y=\"%.1f\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">%.2f</text>\n",
                    ml - 6, py(k / 4.0) + 4, k / 4.0);
      s += buf;
    }
    std::snprintf(buf, sizeof buf,
                  "<text x=\"320\" y=\"%.1f\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">%s [%s]</text>\n",
                  h - 12, to_string(cdf.metric).c_str(), metric_unit(cdf.metric).c_str());
    s += buf;
    s += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
    const std::size_t n = x.size();
    const std::size_t step = std::max<std::size_t>(1, n / 2000);
    for (std::size_t i = 0; i < n; i += step) {
      std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(x[i]), py(double(i + 1) / double(n)));
      s += buf;
    }
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", px(x.back()), py(1.0));
    s += buf;
    s += "\"/>\n";
  }
  s += "</svg>\n";
  return s;
}

inline void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw IoError("cannot write '" + p.string() + "'");
  out << text;
  if (!out) throw IoError("failed writing '" + p.string() + "'");
}

enum class CirFormat { none, csv, bin };

inline void write_campaign(const std::filesystem::path& dir, const CampaignResult& r, const std::string& label,
                           CirFormat cir_format) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir.string() + "': " + ec.message());
  for (const auto& cdf : r.cdfs) {
    const std::string m = to_string(cdf.metric);
    std::string samples = "value\n";
    for (double v : cdf.samples) samples += format_double(v) + "\n";
    write_text(dir / (m + "_samples.csv"), samples);
    std::string table = "percentile,value\n";
    for (std::size_t i = 0; i < cdf.percentiles.size(); ++i)
      table += std::to_string(i + 1) + "," + format_double(cdf.percentiles[i]) + "\n";
    write_text(dir / (m + "_cdf.csv"), table);
    write_text(dir / (m + "_cdf.svg"), cdf_svg(cdf, label + " " + m));
  }
  std::string summary = "key,value\n";
  summary += "label," + label + "\n";
  summary += "drops," + std::to_string(r.drops) + "\n";
  summary += "infeasible_drops," + std::to_string(r.infeasible_drops) + "\n";
  for (const auto& cdf : r.cdfs) summary += to_string(cdf.metric) + "_samples," + std::to_string(cdf.samples.size()) + "\n";
  write_text(dir / "summary.csv", summary);
  if (cir_format == CirFormat::csv) {
    std::ofstream out(dir / "cir.csv", std::ios::binary);
    if (!out) throw IoError("cannot write cir.csv");
    out << kCirCsvHeader << "\n";
    for (const auto& rec : r.cir) write_cir_csv_row(out, rec);
  } else if (cir_format == CirFormat::bin) {
    std::ofstream out(dir / "cir.bin", std::ios::binary);
    if (!out) throw IoError("cannot write cir.bin");
    write_cir_binary(out, r.cir);
  }
}

} // namespace isac
