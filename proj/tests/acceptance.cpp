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

// Acceptance checks. Prints one PASS/FAIL line per criterion; exit status is
// the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "isacsim/isacsim.hpp"

using namespace isac;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

int g_failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool in_time = secs < limit_s;
  const bool pass = o.ok && in_time;
  if (!pass) ++g_failures;
  std::printf("%s %2d %s: %s [%.2f s, limit %.0f s%s]\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), secs,
              limit_s, in_time ? "" : ", too slow");
  std::fflush(stdout);
}

double mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / double(v.size());
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const double ma = mean(a), mb = mean(b);
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

SimulationConfig calibration_config(SensingMode mode) {
  SimulationConfig cfg = bind_config(parse_config("schema = 1\n"));
  cfg.scenario.scenario = ScenarioId::uma_av;
  cfg.scenario.carrier_frequency = 6e9;
  cfg.scenario.bandwidth = 100e6;
  cfg.scenario.tx_power_dbm = 56.0;
  cfg.scenario.noise_figure_db = 5.0;
  cfg.scenario.num_uts = 30;
  cfg.scenario.target_type = TargetType::uav_small;
  cfg.scenario.num_targets = 1;
  cfg.scenario.target_height = 200.0;
  cfg.scenario.min_dist_tx_target = 10.0;
  cfg.scenario.sensing_mode = mode;
  cfg.best_n = 4;
  return cfg;
}

Outcome rcs_golden() {
  const RcsModel large = builtin_rcs_model(TargetType::uav_large);
  struct Row {
    FaceId face;
    SphericalAngle at;
    double expect;
  };
  const Row rows[] = {
      {FaceId::left, {90, 90}, 7.43},   {FaceId::back, {90, 180}, 3.99},  {FaceId::right, {90, -90}, 7.43},
      {FaceId::front, {90, 0}, 1.02},   {FaceId::bottom, {180, 0}, 13.55}, {FaceId::roof, {0, 0}, 13.55},
  };
  double worst = 0.0;
  for (const auto& r : rows) {
    worst = std::max(worst, std::abs(sigma_md_mono_db(large, r.at) - r.expect));
    if (face_for(large, r.at).id != r.face) return {false, "wrong face selected for " + to_string(r.face)};
  }
  const RcsModel small = builtin_rcs_model(TargetType::uav_small);
  const RcsModel human = builtin_rcs_model(TargetType::human_m1);
  for (double z = 0; z <= 180; z += 7.5)
    for (double a = -180; a < 180; a += 11.0) {
      worst = std::max(worst, std::abs(sigma_md_mono_db(small, {z, a}) + 12.81));
      worst = std::max(worst, std::abs(sigma_md_mono_db(human, {z, a}) + 1.37));
    }
  return {worst <= 1e-9, fmt("max |error| %.3g dB over face centres and angle-independent targets", worst)};
}

Outcome sigma_s_normalization() {
  std::string detail;
  bool ok = true;
  for (double std_db : {3.74, 3.94}) {
    Rng rng(20240601);
    double s = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) s += sample_sigma_s(rng, std_db);
    const double m = s / n;
    ok = ok && std::abs(m - 1.0) < 0.01;
    detail += fmt("std %.2f dB -> mean %.5f; ", std_db, m);
  }
  return {ok, detail};
}

Outcome bistatic_reduction() {
  long checked = 0, mismatched = 0;
  for (TargetType t : {TargetType::uav_small, TargetType::uav_large, TargetType::human_m1, TargetType::human_m2,
                       TargetType::vehicle, TargetType::agv}) {
    const RcsModel m = builtin_rcs_model(t);
    for (int z = 0; z <= 180; z += 5)
      for (int a = -180; a < 180; a += 5) {
        const SphericalAngle ang{double(z), double(a)};
        ++checked;
        if (sigma_md_bistatic_db(m, ang, ang) != sigma_md_mono_db(m, ang)) ++mismatched;
      }
  }
  return {mismatched == 0, fmt("%.0f of %.0f grid points differ", double(mismatched), double(checked))};
}

Outcome pathloss_concatenation() {
  double worst = 0.0;
  int curves = 0;
  for (ScenarioId id : {ScenarioId::uma_av, ScenarioId::uma, ScenarioId::umi, ScenarioId::inh, ScenarioId::rma}) {
    const PropagationModel pm = propagation_preset(id);
    for (const auto* c : {&pm.ground_los, &pm.ground_nlos, &pm.aerial_los, &pm.aerial_nlos}) {
      if (!*c) continue;
      ++curves;
      for (double d1 : {20.0, 150.0, 700.0}) {
        double lo = 1e300, hi = -1e300;
        for (double d2 = 10.0; d2 <= 1000.0; d2 += 2.5) {
          const double v =
              pathloss_concatenated(d1, d2, 6e9, 0.05, **c) - pathloss_db(**c, SegmentGeometry::from_distance(d2), 6e9);
          lo = std::min(lo, v);
          hi = std::max(hi, v);
        }
        worst = std::max(worst, hi - lo);
      }
    }
  }
  return {worst < 1e-9, fmt("max variation %.3g dB across %.0f curves", worst, curves)};
}

Outcome mrp_statistics() {
  Rng rng(7);
  const MrpParams p = umi_trp_mrp();
  const int n = 1000000;
  double sd = 0.0, sh = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto rp = sample_reference_points(p, rng, {}, 1);
    sd += rp[0].distance;
    sh += rp[0].height;
  }
  const double md = sd / n, mh = sh / n;
  const bool ok = std::abs(md / 55.06 - 1.0) < 0.02 && std::abs(mh / 5.196 - 1.0) < 0.02;
  return {ok, fmt("mean distance %.3f m (55.06), mean height %.4f m (5.196)", md, mh)};
}

Outcome doppler() {
  const double f = 6e9, lambda = wavelength(f);
  const RcsModel rcs = builtin_rcs_model(TargetType::uav_small);
  TargetLink link;
  link.tx = {0, 0, 25};
  link.rx = {120, 40, 25};
  link.target_pose = {{60, 150, 100}, 30.0};
  link.rcs = &rcs;
  link.spsts = spst_layout(rcs);
  link.los = {false, false, false};
  link.frequency_hz = f;
  ConcatConfig cc;
  TargetChannel tc = build_target_channel(link, cc, 99);
  Rng rng(3);
  PathSet bg = bistatic_background(link.tx, link.rx, default_lsp(false), false, -100.0, rng);
  DopplerContext ctx;
  ctx.lambda = lambda;
  ctx.scatterers = {0.0, 0.0, 5.0};
  apply_doppler(tc.paths, ctx, rng);
  apply_doppler(bg, ctx, rng);
  double worst_static = 0.0;
  for (const auto* ps : {&tc.paths, &bg})
    for (const auto& p : *ps) worst_static = std::max(worst_static, std::abs(p.doppler_at(0.37)));

  // Monostatic target receding along the line of sight.
  const double v = 17.0;
  TargetLink mono;
  mono.tx = mono.rx = {0, 0, 25};
  mono.monostatic = true;
  mono.target_pose = {{300, -40, 180}, 0.0};
  mono.rcs = &rcs;
  mono.spsts = spst_layout(rcs);
  mono.los = {true, true, true};
  mono.frequency_hz = f;
  ConcatConfig direct_only;
  direct_only.clusters = false;
  TargetChannel m = build_target_channel(mono, direct_only, 5);
  DopplerContext mc;
  mc.lambda = lambda;
  mc.v_target = (mono.target_pose.position - mono.tx).normalized() * v;
  apply_doppler(m.paths, mc, rng);
  if (m.paths.size() != 1) return {false, "expected a single direct path"};
  const double expect = 2.0 * v / lambda;
  const double rel = std::abs(std::abs(m.paths[0].doppler_hz) - expect) / expect;
  const bool ok = worst_static == 0.0 && rel < 1e-9 && m.paths[0].doppler_hz < 0.0;
  return {ok, fmt("static max |f_D| %.3g Hz over all paths; radial %.6f Hz vs 2v/lambda, rel error %.3g",
                  worst_static, m.paths[0].doppler_hz, rel)};
}

Outcome xpr_statistics() {
  bool ok = true;
  std::string detail;
  const std::pair<TargetType, double> rows[] = {
      {TargetType::uav_small, 13.75}, {TargetType::human_m1, 19.81}, {TargetType::vehicle, 21.12}, {TargetType::agv, 9.6}};
  for (const auto& [t, expect] : rows) {
    const RcsModel m = builtin_rcs_model(t);
    Rng rng(mix_keys({11, std::uint64_t(t)}));
    const int n = 100000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += sample_xpr_db(rng, m);
    const double mu = s / n;
    ok = ok && std::abs(mu - expect) < 0.1;
    detail += to_string(t) + fmt(" %.3f; ", mu);
  }
  return {ok, detail};
}

Outcome concatenation_count_power() {
  const double f = 6e9;
  const RcsModel rcs = builtin_rcs_model(TargetType::uav_large);
  const Pose pose{{40, 90, 60}, 15.0};
  const Vector3 tx{0, 0, 25}, rx{-50, 30, 1.5};
  Rng rng(1234);
  SegmentChannel s1, s2;
  s1.clusters = generate_clusters(default_lsp(true), rng, true, direction_angle(pose.position - tx),
                                  direction_angle(tx - pose.position));
  s2.clusters = generate_clusters(default_lsp(false), rng, false, direction_angle(rx - pose.position),
                                  direction_angle(pose.position - rx));
  s1.gain_db = -97.3;
  s2.gain_db = -88.1;
  s1.delay_s = distance(tx, pose.position) / kSpeedOfLight;
  s2.delay_s = distance(rx, pose.position) / kSpeedOfLight;
  const double sigma_s = sample_sigma_s(rng, 2.0);
  const double ap = aperture_db(f);
  ScatterContext ctx{&rcs, pose, std::nullopt, sigma_s, ap, 0, 0, wavelength(f)};
  ConcatConfig cfg;
  const PathSet paths = concatenate(s1, s2, ctx, cfg);
  const std::size_t expect = s1.clusters.rays.size() * s2.clusters.rays.size();
  double worst = 0.0;
  for (const auto& p : paths) {
    const Ray& a = s1.clusters.rays[std::size_t(p.ray1)];
    const Ray& b = s2.clusters.rays[std::size_t(p.ray2)];
    const double seg = linear_to_db(a.power) + s1.gain_db + linear_to_db(b.power) + s2.gain_db;
    const double rcs_db = sigma_md_bistatic_db(rcs, gcs_to_lcs(a.arrival, pose), gcs_to_lcs(b.departure, pose)) +
                          linear_to_db(sigma_s);
    worst = std::max(worst, std::abs(p.power_db() - (seg + rcs_db + ap)));
  }
  const bool ok = paths.size() == expect && worst < 1e-6;
  return {ok, fmt("%.0f paths for %.0f ray pairs; max power error %.3g dB", double(paths.size()), double(expect), worst)};
}

Outcome spatial_consistency() {
  const double d = 50.0;
  const FieldRegion region{{0, 0, 0}, {400, 400, 0}};
  // Autocorrelation at lag d, averaged over many independent fields.
  std::vector<double> a, b;
  for (std::uint64_t s = 0; s < 400; ++s) {
    CorrelatedField f(mix_keys({77, s}), d, false, region);
    for (int k = 0; k < 25; ++k) {
      const double x = 20.0 + 13.0 * k, y = 30.0 + 11.0 * (k % 7);
      const bool along_x = (k + s) % 2 == 0;
      a.push_back(f.sample({x, y, 0}));
      b.push_back(f.sample({along_x ? x + d : x, along_x ? y : y + d, 0}));
    }
  }
  const double rho = correlation(a, b);

  CorrelatedField f(5, d, true, {{0, 0, 0}, {200, 200, 100}});
  const bool repeatable = f.sample({12.5, 80.25, 33.0}) == f.sample({12.5, 80.25, 33.0}) &&
                          CorrelatedField(5, d, true, {{0, 0, 0}, {200, 200, 100}}).sample({12.5, 80.25, 33.0}) ==
                              f.sample({12.5, 80.25, 33.0});

  // Excluded pairs: monostatic backgrounds of two TRPs, and two link types at one anchor.
  LinkInfo trp0, trp1, los_link, nlos_link;
  trp0.role = trp1.role = LinkRole::tx_spst;
  trp0.anchor_node = 0;
  trp1.anchor_node = 1;
  trp0.link_id = 1;
  trp1.link_id = 2;
  los_link.anchor_node = nlos_link.anchor_node = 3;
  los_link.link_id = 3;
  nlos_link.link_id = 4;
  nlos_link.type = LinkType::outdoor_nlos;
  if (applies(trp0, trp1) || applies(los_link, nlos_link)) return {false, "excluded pair reported as consistent"};
  std::vector<double> u0, u1, v0, v1;
  const FieldRegion small{{0, 0, 0}, {60, 60, 0}};
  for (std::uint64_t s = 0; s < 10000; ++s) {
    FieldBank bank(mix_keys({91, s}), {}, small, false);
    const Vector3 pos{30, 30, 0};
    u0.push_back(bank.uniform(FieldParam::los_state, trp0, pos));
    u1.push_back(bank.uniform(FieldParam::los_state, trp1, pos));
    v0.push_back(bank.uniform(FieldParam::los_state, los_link, pos));
    v1.push_back(bank.uniform(FieldParam::los_state, nlos_link, pos));
  }
  const double c_trp = correlation(u0, u1), c_type = correlation(v0, v1);
  const bool ok = std::abs(rho - std::exp(-1.0)) <= 0.05 && repeatable && std::abs(c_trp) < 0.05 && std::abs(c_type) < 0.05;
  return {ok, fmt("corr at d_corr %.4f (e^-1 = 0.3679); excluded pairs corr %.4f (TRPs), %.4f (link types)", rho, c_trp,
                  c_type) +
                  (repeatable ? "; identical positions repeat" : "; identical positions differ")};
}

Outcome calibration_campaign() {
  std::string detail;
  bool ok = true;
  for (SensingMode mode : {SensingMode::trp_monostatic, SensingMode::trp_trp}) {
    const SimulationConfig cfg = calibration_config(mode);
    std::vector<std::vector<double>> sets;
    for (std::uint64_t seed : {1001ull, 2002ull}) {
      CampaignSpec spec;
      spec.seed = seed;
      spec.drops = 500;
      spec.mode = mode;
      const CampaignResult r = run_campaign(cfg, spec);
      const auto& x = r.cdfs.at(0).samples;
      ok = ok && std::is_sorted(x.begin(), x.end()) && std::is_sorted(r.cdfs[0].percentiles.begin(), r.cdfs[0].percentiles.end());
      ok = ok && x.size() == 500 * cfg.best_n;
      sets.push_back(x);
    }
    const double ks = ks_distance(sets[0], sets[1]);
    ok = ok && ks < 0.05;
    detail += to_string(mode) + fmt(": median %.2f dB, KS %.4f; ", quantile(sets[0], 0.5), ks);
  }
  return {ok, detail + "CDFs monotone"};
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const fs::path root = fs::temp_directory_path() / "isacsim_acceptance_determinism";
  fs::remove_all(root);
  const SimulationConfig cfg = calibration_config(SensingMode::trp_monostatic);
  std::vector<fs::path> dirs;
  for (int k = 0; k < 3; ++k) {
    CampaignSpec spec;
    spec.seed = 31337;
    spec.drops = 12;
    spec.workers = k == 2 ? 3 : 1;
    spec.metrics = {Metric::coupling_loss, Metric::ds, Metric::asa, Metric::asd, Metric::zsa, Metric::zsd};
    spec.cir_drops = 2;
    const fs::path dir = root / ("run" + std::to_string(k));
    const CampaignResult r = run_campaign(cfg, spec);
    write_campaign(dir, r, "TRP-monostatic", CirFormat::csv);
    write_campaign(dir / "bin", r, "TRP-monostatic", CirFormat::bin);
    dirs.push_back(dir);
  }
  int files = 0, differing = 0;
  for (const auto& e : fs::recursive_directory_iterator(dirs[0])) {
    if (!e.is_regular_file()) continue;
    const fs::path rel = fs::relative(e.path(), dirs[0]);
    ++files;
    const std::string ref = read_file(e.path());
    for (std::size_t k = 1; k < dirs.size(); ++k)
      if (read_file(dirs[k] / rel) != ref) ++differing;
  }
  fs::remove_all(root);
  return {files >= 20 && differing == 0,
          fmt("%.0f files compared across 3 runs (one threaded), %.0f differ", files, differing)};
}

} // namespace

int main() {
  criterion(1, "rcs_golden_tables", 1, rcs_golden);
  criterion(2, "sigma_s_normalization", 5, sigma_s_normalization);
  criterion(3, "bistatic_reduction", 5, bistatic_reduction);
  criterion(4, "pathloss_concatenation", 1, pathloss_concatenation);
  criterion(5, "reference_point_statistics", 5, mrp_statistics);
  criterion(6, "doppler", 1, doppler);
  criterion(7, "xpr_statistics", 5, xpr_statistics);
  criterion(8, "concatenation_count_power", 1, concatenation_count_power);
  criterion(9, "spatial_consistency", 30, spatial_consistency);
  criterion(10, "calibration_campaign", 300, calibration_campaign);
  criterion(11, "determinism", 60, determinism);
  std::printf("%d of 11 criteria failed\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
