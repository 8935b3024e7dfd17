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

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "background_channel.hpp"
#include "doppler.hpp"
#include "eo.hpp"
#include "error.hpp"
#include "large_scale.hpp"
#include "rcs.hpp"
#include "scenario.hpp"
#include "small_scale.hpp"
#include "spatial_consistency.hpp"
#include "synthesis.hpp"
#include "target_channel.hpp"

namespace isac {

// ---------------------------------------------------------------------------
// Document model and parser
//
// Grammar (a subset of TOML):
//   file    := { line }
//   line    := ws [ table | array-table | pair ] ws [ '#' comment ] newline
//   table   := '[' key { '.' key } ']'
//   array-table := '[[' key { '.' key } ']]'
//   pair    := key ws '=' ws value
//   key     := [A-Za-z0-9_-]+
//   value   := string | number | 'true' | 'false' | '[' [ value { ',' value } [','] ] ']'
//   string  := '"' { char | '\"' | '\\' | '\n' | '\t' } '"'
//   number  := decimal integer or float, optional sign and exponent
// Arrays must fit on one line.
// ---------------------------------------------------------------------------

struct ConfigValue {
  using Array = std::vector<ConfigValue>;
  std::variant<bool, double, std::string, Array> data;
  int line = 0;
};

struct ConfigTable {
  std::string path; // dotted name, "" for the root
  std::map<std::string, ConfigValue> values;
  std::map<std::string, ConfigTable> tables;
  std::map<std::string, std::vector<ConfigTable>> arrays;
};

namespace detail {

class ConfigParser {
public:
  explicit ConfigParser(std::string text) : text_(std::move(text)) {}

  ConfigTable parse() {
    ConfigTable root;
    ConfigTable* current = &root;
    std::istringstream in(text_);
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_;
      line_text_ = raw;
      pos_ = 0;
      skip_ws();
      if (at_end() || peek() == '#') continue;
      if (peek() == '[') {
        const bool array = pos_ + 1 < line_text_.size() && line_text_[pos_ + 1] == '[';
        pos_ += array ? 2 : 1;
        std::vector<std::string> keys = dotted_key();
        expect(']');
        if (array) expect(']');
        finish_line();
        current = array ? &open_array(root, keys) : &open_table(root, keys);
        continue;
      }
      const std::string key = bare_key();
      skip_ws();
      expect('=');
      skip_ws();
      ConfigValue v = value();
      finish_line();
      if (current->values.count(key) || current->tables.count(key) || current->arrays.count(key))
        fail("duplicate key '" + key + "'");
      current->values.emplace(key, std::move(v));
    }
    return root;
  }

private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ConfigError("config line " + std::to_string(line_) + ": " + msg);
  }

  bool at_end() const { return pos_ >= line_text_.size(); }
  char peek() const { return line_text_[pos_]; }
  void skip_ws() {
    while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) ++pos_;
  }
  void expect(char c) {
    skip_ws();
    if (at_end() || peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void finish_line() {
    skip_ws();
    if (!at_end() && peek() != '#') fail("unexpected trailing text");
  }

  std::string bare_key() {
    skip_ws();
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) ++pos_;
    if (pos_ == start) fail("expected a key");
    return line_text_.substr(start, pos_ - start);
  }

  std::vector<std::string> dotted_key() {
    std::vector<std::string> keys{bare_key()};
    skip_ws();
    while (!at_end() && peek() == '.') {
      ++pos_;
      keys.push_back(bare_key());
      skip_ws();
    }
    return keys;
  }

  ConfigValue value() {
    ConfigValue v;
    v.line = line_;
    if (at_end()) fail("missing value");
    const char c = peek();
    if (c == '"') {
      v.data = string_literal();
    } else if (c == '[') {
      ++pos_;
      ConfigValue::Array arr;
      skip_ws();
      while (!at_end() && peek() != ']') {
        arr.push_back(value());
        skip_ws();
        if (!at_end() && peek() == ',') {
          ++pos_;
          skip_ws();
        } else {
          break;
        }
      }
      expect(']');
      v.data = std::move(arr);
    } else if (line_text_.compare(pos_, 4, "true") == 0) {
      pos_ += 4;
      v.data = true;
    } else if (line_text_.compare(pos_, 5, "false") == 0) {
      pos_ += 5;
      v.data = false;
    } else {
      v.data = number();
    }
    return v;
  }

  std::string string_literal() {
    ++pos_;
    std::string out;
    while (!at_end() && peek() != '"') {
      char c = peek();
      ++pos_;
      if (c == '\\') {
        if (at_end()) fail("unterminated escape");
        const char e = peek();
        ++pos_;
        if (e == 'n') c = '\n';
        else if (e == 't') c = '\t';
        else if (e == '"' || e == '\\') c = e;
        else fail("unknown escape");
      }
      out.push_back(c);
    }
    if (at_end()) fail("unterminated string");
    ++pos_;
    return out;
  }

  double number() {
    const std::size_t start = pos_;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '+' || peek() == '-' ||
                         peek() == '.' || peek() == '_'))
      ++pos_;
    std::string tok = line_text_.substr(start, pos_ - start);
    std::erase(tok, '_');
    if (tok.empty()) fail("expected a value");
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() + tok.size() || !std::isfinite(d)) fail("invalid number '" + tok + "'");
    return d;
  }

  static std::string join(const std::vector<std::string>& keys, std::size_t n) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) s += (i ? "." : "") + keys[i];
    return s;
  }

  ConfigTable& descend(ConfigTable& root, const std::vector<std::string>& keys, std::size_t n) {
    ConfigTable* t = &root;
    for (std::size_t i = 0; i < n; ++i) {
      const std::string& k = keys[i];
      if (t->values.count(k)) fail("'" + k + "' is already a value");
      if (auto it = t->arrays.find(k); it != t->arrays.end()) {
        t = &it->second.back();
        continue;
      }
      auto& sub = t->tables[k];
      sub.path = join(keys, i + 1);
      t = &sub;
    }
    return *t;
  }

  ConfigTable& open_table(ConfigTable& root, const std::vector<std::string>& keys) {
    const std::string name = join(keys, keys.size());
    if (!opened_.insert(name).second) fail("table [" + name + "] defined twice");
    ConfigTable& parent = descend(root, keys, keys.size() - 1);
    const std::string& last = keys.back();
    if (parent.values.count(last) || parent.arrays.count(last)) fail("'" + last + "' is already defined");
    auto& t = parent.tables[last];
    t.path = name;
    return t;
  }

  ConfigTable& open_array(ConfigTable& root, const std::vector<std::string>& keys) {
    ConfigTable& parent = descend(root, keys, keys.size() - 1);
    const std::string& last = keys.back();
    if (parent.values.count(last) || parent.tables.count(last)) fail("'" + last + "' is already defined");
    auto& vec = parent.arrays[last];
    vec.emplace_back();
    vec.back().path = join(keys, keys.size());
    return vec.back();
  }

  std::string text_;
  std::string line_text_;
  std::size_t pos_ = 0;
  int line_ = 0;
  std::set<std::string> opened_;
};

} // namespace detail

inline ConfigTable parse_config(const std::string& text) { return detail::ConfigParser(text).parse(); }

inline ConfigTable load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

/// Typed, strict view of a table: every key must be read before finish().
class TableReader {
public:
  explicit TableReader(const ConfigTable* t) : t_(t) {}

  bool present() const { return t_ != nullptr; }

  std::optional<double> number(const std::string& key) {
    const ConfigValue* v = take(key);
    if (!v) return std::nullopt;
    if (auto d = std::get_if<double>(&v->data)) return *d;
    fail(key, "expected a number");
  }
  double number(const std::string& key, double fallback) { return number(key).value_or(fallback); }

  std::optional<int> integer(const std::string& key) {
    auto d = number(key);
    if (!d) return std::nullopt;
    if (std::floor(*d) != *d || std::abs(*d) > 2e9) fail(key, "expected an integer");
    return int(*d);
  }
  int integer(const std::string& key, int fallback) { return integer(key).value_or(fallback); }

  std::optional<bool> boolean(const std::string& key) {
    const ConfigValue* v = take(key);
    if (!v) return std::nullopt;
    if (auto b = std::get_if<bool>(&v->data)) return *b;
    fail(key, "expected true or false");
  }
  bool boolean(const std::string& key, bool fallback) { return boolean(key).value_or(fallback); }

  std::optional<std::string> string(const std::string& key) {
    const ConfigValue* v = take(key);
    if (!v) return std::nullopt;
    if (auto s = std::get_if<std::string>(&v->data)) return *s;
    fail(key, "expected a string");
  }

  std::optional<std::vector<double>> numbers(const std::string& key, std::size_t expected_size = 0) {
    const ConfigValue* v = take(key);
    if (!v) return std::nullopt;
    auto arr = std::get_if<ConfigValue::Array>(&v->data);
    if (!arr) fail(key, "expected an array");
    std::vector<double> out;
    for (const auto& e : *arr) {
      auto d = std::get_if<double>(&e.data);
      if (!d) fail(key, "expected an array of numbers");
      out.push_back(*d);
    }
    if (expected_size && out.size() != expected_size)
      fail(key, "expected " + std::to_string(expected_size) + " elements");
    return out;
  }

  std::optional<std::vector<std::string>> strings(const std::string& key) {
    const ConfigValue* v = take(key);
    if (!v) return std::nullopt;
    auto arr = std::get_if<ConfigValue::Array>(&v->data);
    if (!arr) fail(key, "expected an array");
    std::vector<std::string> out;
    for (const auto& e : *arr) {
      auto s = std::get_if<std::string>(&e.data);
      if (!s) fail(key, "expected an array of strings");
      out.push_back(*s);
    }
    return out;
  }

  std::optional<Vector3> vector3(const std::string& key) {
    auto v = numbers(key, 3);
    if (!v) return std::nullopt;
    return Vector3{(*v)[0], (*v)[1], (*v)[2]};
  }

  TableReader table(const std::string& key) {
    if (!t_) return TableReader(nullptr);
    auto it = t_->tables.find(key);
    if (it == t_->tables.end()) {
      if (t_->values.count(key) || t_->arrays.count(key)) fail(key, "expected a table");
      return TableReader(nullptr);
    }
    used_tables_.insert(key);
    return TableReader(&it->second);
  }

  std::vector<TableReader> array(const std::string& key) {
    std::vector<TableReader> out;
    if (!t_) return out;
    auto it = t_->arrays.find(key);
    if (it == t_->arrays.end()) {
      if (t_->values.count(key) || t_->tables.count(key)) fail(key, "expected an array of tables");
      return out;
    }
    used_tables_.insert(key);
    for (const auto& t : it->second) out.emplace_back(&t);
    return out;
  }

  void finish() const {
    if (!t_) return;
    for (const auto& [k, v] : t_->values)
      if (!used_.count(k)) throw ConfigError("config line " + std::to_string(v.line) + ": unknown key '" + k + "' in " + where());
    for (const auto& [k, v] : t_->tables)
      if (!used_tables_.count(k)) throw ConfigError("unknown table [" + v.path + "]");
    for (const auto& [k, v] : t_->arrays)
      if (!used_tables_.count(k)) throw ConfigError("unknown array of tables [[" + (v.empty() ? k : v.front().path) + "]]");
  }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    std::string line;
    if (t_)
      if (auto it = t_->values.find(key); it != t_->values.end()) line = "config line " + std::to_string(it->second.line) + ": ";
    throw ConfigError(line + "'" + key + "' in " + where() + ": " + msg);
  }

private:
  std::string where() const { return t_ && !t_->path.empty() ? "[" + t_->path + "]" : "the top level"; }

  const ConfigValue* take(const std::string& key) {
    if (!t_) return nullptr;
    auto it = t_->values.find(key);
    if (it == t_->values.end()) return nullptr;
    used_.insert(key);
    return &it->second;
  }

  const ConfigTable* t_;
  std::set<std::string> used_;
  std::set<std::string> used_tables_;
};

// ---------------------------------------------------------------------------
// Simulation configuration
// ---------------------------------------------------------------------------

enum class Metric { coupling_loss, ds, asa, asd, zsa, zsd };

inline std::optional<Metric> parse_metric(std::string_view s) {
  if (s == "coupling_loss") return Metric::coupling_loss;
  if (s == "ds") return Metric::ds;
  if (s == "asa") return Metric::asa;
  if (s == "asd") return Metric::asd;
  if (s == "zsa") return Metric::zsa;
  if (s == "zsd") return Metric::zsd;
  return std::nullopt;
}

inline std::string to_string(Metric m) {
  switch (m) {
    case Metric::coupling_loss: return "coupling_loss";
    case Metric::ds: return "ds";
    case Metric::asa: return "asa";
    case Metric::asd: return "asd";
    case Metric::zsa: return "zsa";
    case Metric::zsd: return "zsd";
  }
  return "?";
}

struct MicroMotionSpec {
  MicroMotion motion;
  int spst = 0;
};

struct RunDefaults {
  int drops = 100;
  std::uint64_t seed = 1;
  std::vector<Metric> metrics{Metric::coupling_loss};
  int workers = 0; // 0 = hardware concurrency
};

struct SimulationConfig {
  ScenarioConfig scenario;
  RcsModel rcs = builtin_rcs_model(TargetType::uav_small);
  PropagationModel propagation = propagation_preset(ScenarioId::uma_av);
  LspSet lsp_los = default_lsp(true);
  LspSet lsp_nlos = default_lsp(false);
  ConcatConfig concat;
  bool background = true;
  BackgroundConfig background_cfg;
  std::optional<MrpParams> mrp; // unset: chosen per node type
  ScattererMotionParams scatterers;
  std::vector<MicroMotionSpec> micro;
  bool spatial_consistency = true;
  CorrelationDistances correlation;
  SynthesisConfig synthesis;
  BackgroundNormalization background_normalization = BackgroundNormalization::none;
  double background_power_ratio = 1.0;
  std::size_t best_n = 4;
  std::optional<double> rcs_component_a_db; // unset: the model's sigma_m_db
  RunDefaults run;

  double component_a_db() const { return rcs_component_a_db.value_or(rcs.sigma_m_db); }
};

namespace detail {

template <typename T, typename F>
T parse_enum(TableReader& r, const std::string& key, T fallback, F parse) {
  auto s = r.string(key);
  if (!s) return fallback;
  auto v = parse(*s);
  if (!v) r.fail(key, "unknown value '" + *s + "'");
  return *v;
}

inline AngleRange read_range(TableReader& r, const std::string& key, AngleRange fallback, bool hi_closed) {
  auto v = r.numbers(key, 2);
  if (!v) return fallback;
  return {(*v)[0], (*v)[1], hi_closed};
}

inline void read_lsp(TableReader r, LspSet& l) {
  if (!r.present()) return;
  l.ds = r.number("ds_s", l.ds);
  l.asd = r.number("asd_deg", l.asd);
  l.asa = r.number("asa_deg", l.asa);
  l.zsa = r.number("zsa_deg", l.zsa);
  l.zsd = r.number("zsd_deg", l.zsd);
  l.k_factor_db = r.number("k_factor_db", l.k_factor_db);
  l.n_clusters = r.integer("n_clusters", l.n_clusters);
  l.m_rays = r.integer("m_rays", l.m_rays);
  l.r_tau = r.number("r_tau", l.r_tau);
  l.zeta_db = r.number("zeta_db", l.zeta_db);
  l.c_asd = r.number("c_asd_deg", l.c_asd);
  l.c_asa = r.number("c_asa_deg", l.c_asa);
  l.c_zsa = r.number("c_zsa_deg", l.c_zsa);
  l.c_zsd = r.number("c_zsd_deg", l.c_zsd);
  l.xpr_mu_db = r.number("xpr_mu_db", l.xpr_mu_db);
  l.xpr_sigma_db = r.number("xpr_sigma_db", l.xpr_sigma_db);
  r.finish();
  l.validate();
}

inline PathlossModel read_curve(TableReader& r) {
  PathlossModel m;
  m.kind = parse_enum(r, "kind", PathlossKind::curve, parse_pathloss_kind);
  m.a = r.number("a", 0.0);
  m.b = r.number("b", 0.0);
  m.c = r.number("c", 0.0);
  return m;
}

} // namespace detail

inline SimulationConfig bind_config(const ConfigTable& root) {
  SimulationConfig cfg;
  TableReader top(&root);
  const auto schema = top.integer("schema");
  if (!schema) throw ConfigError("missing required top-level key 'schema'");
  if (*schema != 1) throw ConfigError("unsupported schema " + std::to_string(*schema) + " (expected 1)");

  // [scenario]
  {
    auto r = top.table("scenario");
    auto& s = cfg.scenario;
    s.scenario = detail::parse_enum(r, "id", s.scenario, parse_scenario);
    s.carrier_frequency = r.number("carrier_frequency_hz", s.carrier_frequency);
    s.bandwidth = r.number("bandwidth_hz", s.bandwidth);
    s.sensing_mode = detail::parse_enum(r, "sensing_mode", s.sensing_mode, parse_sensing_mode);
    s.tx_power_dbm = r.number("tx_power_dbm", s.tx_power_dbm);
    s.noise_figure_db = r.number("noise_figure_db", s.noise_figure_db);
    s.num_uts = r.integer("num_uts", s.num_uts);
    s.ut_height = r.number("ut_height_m", s.ut_height);
    s.ut_speed = r.number("ut_speed_mps", s.ut_speed);
    auto l = r.table("layout");
    s.layout.n_sites = l.integer("n_sites", s.layout.n_sites);
    s.layout.isd = l.number("isd_m", s.layout.isd);
    s.layout.cell_radius = l.number("cell_radius_m", s.layout.cell_radius);
    s.layout.trp_height = l.number("trp_height_m", s.layout.trp_height);
    l.finish();
    r.finish();
  }
  cfg.propagation = propagation_preset(cfg.scenario.scenario);

  // [target]
  SpstMode spst_mode = SpstMode::single;
  {
    auto r = top.table("target");
    auto& s = cfg.scenario;
    s.target_type = detail::parse_enum(r, "type", s.target_type, parse_target_type);
    s.num_targets = r.integer("count", s.num_targets);
    s.target_height = r.number("height_m", s.target_height);
    s.target_speed = r.number("speed_mps", s.target_speed);
    s.min_dist_tx_target = r.number("min_dist_tx_target_m", s.min_dist_tx_target);
    if (auto v = r.number("min_dist_target_target_m")) s.min_dist_target_target = *v;
    if (auto m = r.string("spst_mode")) {
      if (*m == "single") spst_mode = SpstMode::single;
      else if (*m == "multi") spst_mode = SpstMode::multi;
      else r.fail("spst_mode", "expected \"single\" or \"multi\"");
    }
    r.finish();
  }
  cfg.rcs = builtin_rcs_model(cfg.scenario.target_type, spst_mode);

  // [rcs]
  {
    auto r = top.table("rcs");
    auto& m = cfg.rcs;
    m.sigma_m_db = r.number("sigma_m_db", m.sigma_m_db);
    m.sigma_s_std_db = r.number("sigma_s_std_db", m.sigma_s_std_db);
    m.k1 = r.number("k1", m.k1);
    m.k2 = r.number("k2", m.k2);
    m.xpr_mu_db = r.number("xpr_mu_db", m.xpr_mu_db);
    m.xpr_sigma_db = r.number("xpr_sigma_db", m.xpr_sigma_db);
    m.forward_scattering_db = r.number("forward_scattering_db", m.forward_scattering_db);
    if (auto v = r.vector3("size_m")) m.size = *v;
    if (m.sigma_s_std_db < 0.0) r.fail("sigma_s_std_db", "must be non-negative");
    auto faces = r.array("face");
    if (!faces.empty()) {
      m.faces.clear();
      m.angle_dependent = true;
      for (auto& f : faces) {
        FaceParams p;
        p.id = detail::parse_enum(f, "id", FaceId::front, parse_face);
        if (auto v = f.number("phi_center_deg")) p.phi_center = *v;
        p.phi_3db = f.number("phi_3db_deg", 0.0);
        p.theta_center = f.number("theta_center_deg", 90.0);
        p.theta_3db = f.number("theta_3db_deg", 0.0);
        p.g_max_db = f.number("g_max_db", 0.0);
        p.sigma_max_db = f.number("sigma_max_db", 0.0);
        const bool closed = f.boolean("theta_hi_closed", false);
        p.theta_range = detail::read_range(f, "theta_range_deg", {0.0, 180.0, true}, closed);
        p.phi_range = detail::read_range(f, "phi_range_deg", {0.0, 360.0, false}, false);
        if (!(p.theta_3db > 0.0) || (p.phi_center && !(p.phi_3db > 0.0)))
          f.fail("theta_3db_deg", "3 dB beamwidths must be positive");
        f.finish();
        m.faces.push_back(p);
      }
    }
    r.finish();
  }

  // [calibration]
  {
    auto r = top.table("calibration");
    cfg.best_n = std::size_t(r.integer("best_n", int(cfg.best_n)));
    if (auto v = r.number("rcs_component_a_db")) cfg.rcs_component_a_db = *v;
    r.finish();
  }

  // [pathloss]
  {
    auto r = top.table("pathloss");
    for (const char* seg : {"ground_los", "ground_nlos", "aerial_los", "aerial_nlos"}) {
      auto t = r.table(seg);
      if (!t.present()) continue;
      const PathlossModel m = detail::read_curve(t);
      t.finish();
      const std::string s = seg;
      if (s == "ground_los") cfg.propagation.ground_los = m;
      if (s == "ground_nlos") cfg.propagation.ground_nlos = m;
      if (s == "aerial_los") cfg.propagation.aerial_los = m;
      if (s == "aerial_nlos") cfg.propagation.aerial_nlos = m;
    }
    r.finish();
  }

  // [los]
  {
    auto r = top.table("los");
    auto& p = cfg.propagation;
    if (auto g = r.string("ground")) {
      auto k = parse_los_kind(*g);
      if (!k) r.fail("ground", "unknown LoS model '" + *g + "'");
      p.ground_los_model = LosModel{*k, 1.0};
    }
    if (auto v = r.number("ground_probability")) {
      if (!p.ground_los_model) p.ground_los_model = LosModel{LosKind::constant, 1.0};
      p.ground_los_model->probability = *v;
    }
    if (auto a = r.string("aerial")) {
      auto k = parse_los_kind(*a);
      if (!k) r.fail("aerial", "unknown LoS model '" + *a + "'");
      p.aerial_los_model.kind = *k;
    }
    p.aerial_los_model.probability = r.number("aerial_probability", p.aerial_los_model.probability);
    p.aerial_height_threshold = r.number("aerial_height_threshold_m", p.aerial_height_threshold);
    r.finish();
  }

  // [shadow_fading]
  {
    auto r = top.table("shadow_fading");
    auto& sf = cfg.propagation.shadow_fading;
    sf.ground_los_db = r.number("ground_los_db", sf.ground_los_db);
    sf.ground_nlos_db = r.number("ground_nlos_db", sf.ground_nlos_db);
    sf.aerial_nlos_db = r.number("aerial_nlos_db", sf.aerial_nlos_db);
    if (auto v = r.number("aerial_los_db")) sf.aerial_los_db = *v;
    r.finish();
  }

  // [lsp.los], [lsp.nlos]
  {
    auto r = top.table("lsp");
    detail::read_lsp(r.table("los"), cfg.lsp_los);
    detail::read_lsp(r.table("nlos"), cfg.lsp_nlos);
    r.finish();
  }

  // [concatenation]
  {
    auto r = top.table("concatenation");
    auto& c = cfg.concat;
    c.mode = detail::parse_enum(r, "mode", c.mode, parse_concat_mode);
    c.drop_threshold_db = r.number("drop_threshold_db", c.drop_threshold_db);
    c.normalization = detail::parse_enum(r, "normalization", c.normalization, parse_normalization);
    c.angle_filter = r.boolean("angle_filter", c.angle_filter);
    c.clusters = r.boolean("clusters", c.clusters);
    if (!(c.drop_threshold_db > 0.0)) r.fail("drop_threshold_db", "must be positive");
    r.finish();
  }

  // [background]
  {
    auto r = top.table("background");
    cfg.background = r.boolean("enabled", cfg.background);
    if (auto t = r.string("trip")) {
      if (*t == "round_trip") cfg.background_cfg.trip = Trip::round_trip;
      else if (*t == "one_way") cfg.background_cfg.trip = Trip::one_way;
      else r.fail("trip", "expected \"round_trip\" or \"one_way\"");
    }
    cfg.background_cfg.n_reference_points = r.integer("reference_points", cfg.background_cfg.n_reference_points);
    if (cfg.background_cfg.n_reference_points < 1) r.fail("reference_points", "must be at least 1");
    auto m = r.table("mrp");
    if (m.present()) {
      MrpParams p;
      p.alpha_d = m.number("alpha_d", p.alpha_d);
      p.beta_d = m.number("beta_d", p.beta_d);
      p.c_d = m.number("c_d", p.c_d);
      p.alpha_h = m.number("alpha_h", p.alpha_h);
      p.beta_h = m.number("beta_h", p.beta_h);
      p.c_h = m.number("c_h", p.c_h);
      m.finish();
      cfg.mrp = p;
    }
    r.finish();
  }

  // [doppler]
  {
    auto r = top.table("doppler");
    cfg.scatterers.p = r.number("p", 0.0);
    cfg.scatterers.p_prime = r.number("p_prime", 0.0);
    cfg.scatterers.v_scatt = r.number("v_scatt_mps", 0.0);
    for (auto& m : r.array("micro")) {
      MicroMotionSpec spec;
      const BodyPart part = detail::parse_enum(m, "part", BodyPart::custom, parse_body_part);
      spec.motion = default_micro_motion(part);
      spec.motion.amplitude = m.number("amplitude_m", spec.motion.amplitude);
      spec.motion.frequency = m.number("frequency_hz", spec.motion.frequency);
      spec.motion.phase = m.number("phase_rad", spec.motion.phase);
      if (auto a = m.vector3("axis")) {
        if (!(a->norm() > 0.0)) m.fail("axis", "must be non-zero");
        spec.motion.axis = a->normalized();
      }
      spec.spst = m.integer("spst", 0);
      if (spec.spst < 0) m.fail("spst", "must be non-negative");
      for (const auto& other : cfg.micro)
        if (other.spst == spec.spst) m.fail("spst", "at most one micro motion per scattering point");
      if (spec.motion.amplitude < 0.0 || spec.motion.frequency < 0.0)
        m.fail("amplitude_m", "amplitude and frequency must be non-negative");
      m.finish();
      cfg.micro.push_back(spec);
    }
    r.finish();
  }

  // [spatial_consistency]
  {
    auto r = top.table("spatial_consistency");
    cfg.spatial_consistency = r.boolean("enabled", cfg.spatial_consistency);
    auto& c = cfg.correlation;
    c.los_state = r.number("los_state_m", c.los_state);
    c.delays = r.number("delays_m", c.delays);
    c.powers = r.number("powers_m", c.powers);
    c.angles = r.number("angles_m", c.angles);
    r.finish();
  }

  // [synthesis]
  {
    auto r = top.table("synthesis");
    auto& s = cfg.synthesis;
    s.o_isac = r.number("o_isac", s.o_isac);
    s.k_eo = r.number("k_eo", s.k_eo);
    s.n_shared = r.integer("n_shared", s.n_shared);
    s.time.start = r.number("time_start_s", s.time.start);
    s.time.step = r.number("time_step_s", s.time.step);
    s.time.count = r.integer("time_count", s.time.count);
    s.quantize_bandwidth = r.number("quantize_bandwidth_hz", s.quantize_bandwidth);
    if (auto n = r.string("background_normalization")) {
      if (*n == "none") cfg.background_normalization = BackgroundNormalization::none;
      else if (*n == "power_ratio") cfg.background_normalization = BackgroundNormalization::power_ratio;
      else r.fail("background_normalization", "expected \"none\" or \"power_ratio\"");
    }
    cfg.background_power_ratio = r.number("power_ratio", cfg.background_power_ratio);
    if (s.k_eo < 0.0 || s.k_eo > 1.0) r.fail("k_eo", "must be in [0, 1]");
    if (!(s.time.step > 0.0) || s.time.count < 1) r.fail("time_step_s", "time grid needs step > 0 and count >= 1");
    if (s.n_shared != 0)
      r.fail("n_shared", "shared clusters are available through the library API only; campaigns need 0");
    r.finish();
  }

  // [[eo]]
  for (auto& e : top.array("eo")) {
    EoDescriptor d;
    if (auto k = e.string("kind")) {
      if (*k == "type1") d.kind = EoKind::type1;
      else if (*k == "type2") d.kind = EoKind::type2;
      else e.fail("kind", "expected \"type1\" or \"type2\"");
    }
    if (auto p = e.vector3("point")) d.plane.point = *p;
    if (auto n = e.vector3("normal")) d.plane.normal = *n;
    d.plane.width = e.number("width_m", d.plane.width);
    d.plane.height = e.number("height_m", d.plane.height);
    d.reflection_loss_db = e.number("reflection_loss_db", d.reflection_loss_db);
    if (auto t = e.string("target_type")) {
      auto tt = parse_target_type(*t);
      if (!tt) e.fail("target_type", "unknown target type '" + *t + "'");
      d.target_type = *tt;
    }
    if (auto p = e.vector3("position")) d.pose.position = *p;
    d.pose.heading = e.number("heading_deg", 0.0);
    if (d.kind == EoKind::type1 && !d.target_type) e.fail("kind", "type-1 objects need a target_type");
    e.finish();
    d.validate();
    cfg.scenario.eos.push_back(d);
  }

  // [run]
  {
    auto r = top.table("run");
    cfg.run.drops = r.integer("drops", cfg.run.drops);
    if (auto s = r.number("seed")) {
      if (*s < 0 || std::floor(*s) != *s) r.fail("seed", "expected a non-negative integer");
      cfg.run.seed = std::uint64_t(*s);
    }
    if (auto ms = r.strings("metrics")) {
      cfg.run.metrics.clear();
      for (const auto& m : *ms) {
        auto v = parse_metric(m);
        if (!v) r.fail("metrics", "unknown metric '" + m + "'");
        cfg.run.metrics.push_back(*v);
      }
    }
    cfg.run.workers = r.integer("workers", cfg.run.workers);
    r.finish();
  }

  top.finish();
  cfg.scenario.validate();
  if (cfg.best_n < 1) throw ConfigError("best_n must be at least 1");
  return cfg;
}

inline SimulationConfig load_simulation_config(const std::string& path) { return bind_config(load_config_file(path)); }

} // namespace isac
