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

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "isacsim/isacsim.hpp"

namespace {

enum class Level { error = 0, warn = 1, info = 2, debug = 3 };

Level g_level = Level::warn;

Level level_from_env() {
  const char* v = std::getenv("ISACSIM_LOG");
  if (!v) return Level::warn;
  const std::string s = v;
  if (s == "error") return Level::error;
  if (s == "warn" || s == "warning") return Level::warn;
  if (s == "info") return Level::info;
  if (s == "debug" || s == "trace") return Level::debug;
  std::fprintf(stderr, "isacsim: ignoring unknown ISACSIM_LOG value '%s'\n", v);
  return Level::warn;
}

void log(Level l, const std::string& msg) {
  static const char* names[] = {"error", "warn", "info", "debug"};
  if (l <= g_level) std::fprintf(stderr, "[%s] %s\n", names[int(l)], msg.c_str());
}

int exit_code(const isac::Error& e) {
  switch (e.code()) {
    case isac::ErrorCode::config:
    case isac::ErrorCode::unsupported_scenario: return 2;
    case isac::ErrorCode::placement_infeasible: return 3;
    case isac::ErrorCode::io: return 4;
    default: return 1;
  }
}

isac::SensingMode resolve_mode(const std::string& flag, isac::SensingMode configured) {
  using isac::SensingMode;
  if (flag.empty()) return configured;
  const bool configured_mono = configured == SensingMode::trp_monostatic || configured == SensingMode::ut_monostatic;
  if (flag == "monostatic") return configured_mono ? configured : SensingMode::trp_monostatic;
  if (flag == "bistatic") return configured_mono ? SensingMode::trp_trp : configured;
  if (auto m = isac::parse_sensing_mode(flag)) return *m;
  throw isac::ConfigError("unknown --mode '" + flag + "'");
}

void print_tables() {
  using namespace isac;
  std::printf("# RCS component A and fluctuation, angle-independent targets (TR 38.901 Rel-19 ISAC)\n");
  std::printf("target,sigma_m_dbsm,sigma_s_std_db\n");
  for (TargetType t : {TargetType::uav_small, TargetType::human_m1}) {
    const RcsModel m = builtin_rcs_model(t);
    std::printf("%s,%.2f,%.2f\n", to_string(t).c_str(), m.sigma_m_db, m.sigma_s_std_db);
  }
  std::printf("\n# Face pattern of the large UAV (TR 38.901 Rel-19 ISAC)\n");
  std::printf("face,phi_center_deg,phi_3db_deg,theta_center_deg,theta_3db_deg,g_max_dbsm,sigma_max_db\n");
  for (const auto& f : large_uav_faces()) {
    std::printf("%s,%s,%.2f,%.1f,%.2f,%.2f,%.2f\n", to_string(f.id).c_str(),
                f.phi_center ? std::to_string(int(*f.phi_center)).c_str() : "-", f.phi_3db, f.theta_center, f.theta_3db,
                f.g_max_db, f.sigma_max_db);
  }
  std::printf("\n# Bistatic correction constants (TR 38.901 Rel-19 ISAC)\n");
  std::printf("target,k1,k2\n");
  for (TargetType t : {TargetType::uav_large, TargetType::human_m2, TargetType::vehicle, TargetType::agv}) {
    const RcsModel m = builtin_rcs_model(t);
    std::printf("%s,%.4g,%.4g\n", to_string(t).c_str(), m.k1, m.k2);
  }
  std::printf("\n# Target XPR (TR 38.901 Rel-19 ISAC)\n");
  std::printf("target,mu_db,sigma_db\n");
  for (TargetType t : {TargetType::uav_small, TargetType::human_m1, TargetType::vehicle, TargetType::agv}) {
    const XprStats x = builtin_xpr(t);
    std::printf("%s,%.2f,%.2f\n", to_string(t).c_str(), x.mu_db, x.sigma_db);
  }
  std::printf("\n# Monostatic background reference points, UMi (TR 38.901 Rel-19 ISAC)\n");
  std::printf("node,alpha_d,beta_d,c_d,alpha_h,beta_h,c_h,mean_d_m,mean_h_m\n");
  auto row = [](const char* n, const MrpParams& p) {
    std::printf("%s,%.4g,%.4g,%.4g,%.4g,%.4g,%.4g,%.4f,%.4f\n", n, p.alpha_d, p.beta_d, p.c_d, p.alpha_h, p.beta_h, p.c_h,
                p.mean_distance(), p.mean_height());
  };
  row("trp", umi_trp_mrp());
  row("ut", umi_ut_mrp());
  row("uav_200m", umi_uav_mrp(200.0));
}

} // namespace

int main(int argc, char** argv) {
  g_level = level_from_env();
  CLI::App app{"isacsim: channel simulator for integrated sensing and communication"};
  app.require_subcommand(1);

  std::string config_path, out_dir, metrics_flag, mode_flag, cir_flag;
  int drops = 0, workers = 0, cir_drops = 1;
  std::uint64_t seed = 0;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "run a calibration campaign");
  run->add_option("--config", config_path, "configuration file")->required();
  run->add_option("--drops", drops, "number of drops")->check(CLI::PositiveNumber);
  run->add_option("--seed", seed, "master seed");
  run->add_option("--out", out_dir, "output directory")->required();
  run->add_option("--workers", workers, "worker threads")->check(CLI::PositiveNumber);
  run->add_option("--metrics", metrics_flag, "comma-separated: coupling_loss,ds,asa,asd,zsa,zsd");
  run->add_option("--mode", mode_flag, "monostatic, bistatic or an explicit sensing mode");
  run->add_flag("--verbose", verbose, "print the stage trace of the first drop");
  run->add_option("--cir", cir_flag, "also write CIRs")->check(CLI::IsMember({"csv", "bin"}));
  run->add_option("--cir-drops", cir_drops, "drops whose CIRs are written")->check(CLI::NonNegativeNumber);

  auto* validate = app.add_subcommand("validate", "parse and check a configuration file");
  validate->add_option("--config", config_path, "configuration file")->required();

  auto* tables = app.add_subcommand("tables", "print the embedded model tables");

  CLI11_PARSE(app, argc, argv);
  if (verbose && g_level < Level::info) g_level = Level::info;

  try {
    if (tables->parsed()) {
      print_tables();
      return 0;
    }
    const isac::SimulationConfig cfg = isac::load_simulation_config(config_path);
    if (validate->parsed()) {
      std::printf("ok: %s, %s, %s target, %d UTs\n", isac::to_string(cfg.scenario.scenario).c_str(),
                  isac::to_string(cfg.scenario.sensing_mode).c_str(), isac::to_string(cfg.scenario.target_type).c_str(),
                  cfg.scenario.num_uts);
      return 0;
    }

    isac::CampaignSpec spec;
    spec.drops = run->count("--drops") ? drops : cfg.run.drops;
    spec.seed = run->count("--seed") ? seed : cfg.run.seed;
    spec.workers = run->count("--workers") ? workers : cfg.run.workers;
    spec.metrics = cfg.run.metrics;
    if (!metrics_flag.empty()) {
      spec.metrics.clear();
      for (const auto& m : CLI::detail::split(metrics_flag, ',')) {
        auto v = isac::parse_metric(CLI::detail::trim_copy(m));
        if (!v) throw isac::ConfigError("unknown metric '" + m + "'");
        spec.metrics.push_back(*v);
      }
    }
    spec.mode = resolve_mode(mode_flag, cfg.scenario.sensing_mode);
    spec.trace = verbose;
    const isac::CirFormat cir = cir_flag == "csv" ? isac::CirFormat::csv
                                : cir_flag == "bin" ? isac::CirFormat::bin
                                                    : isac::CirFormat::none;
    spec.cir_drops = cir == isac::CirFormat::none ? 0 : cir_drops;

    log(Level::info, "mode " + isac::to_string(spec.mode) + ", " + std::to_string(spec.drops) + " drops, seed " +
                         std::to_string(spec.seed) + ", " + std::to_string(spec.workers) + " workers");
    const auto t0 = std::chrono::steady_clock::now();
    const isac::CampaignResult result = isac::run_campaign(cfg, spec);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    for (const auto& s : result.trace) log(Level::info, "stage " + s);
    if (result.infeasible_drops > 0)
      log(Level::warn, std::to_string(result.infeasible_drops) + " drops failed placement and were skipped");
    isac::write_campaign(out_dir, result, isac::to_string(spec.mode), cir);
    char buf[128];
    std::snprintf(buf, sizeof buf, "%d drops in %.2f s", spec.drops, secs);
    log(Level::info, buf);
    return 0;
  } catch (const isac::Error& e) {
    log(Level::error, e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    log(Level::error, e.what());
    return 1;
  }
}
