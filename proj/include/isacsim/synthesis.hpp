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
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstring>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "constants.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "path.hpp"
#include "random.hpp"
#include "small_scale.hpp"

namespace isac {

// ---------------------------------------------------------------------------
// Antennas
// ---------------------------------------------------------------------------

/// Isotropic element with a linear polarization slant; position in metres.
struct AntennaElement {
  Vector3 position;
  double slant_deg = 0.0;
};

struct AntennaArray {
  std::vector<AntennaElement> elements;

  static AntennaArray dual_pol_isotropic() { return {{{{}, 0.0}, {{}, 90.0}}}; }

  /// Uniform linear array along the local y axis with one polarization.
  static AntennaArray ula(int n, double spacing_m, double slant_deg = 0.0) {
    AntennaArray a;
    for (int i = 0; i < n; ++i) a.elements.push_back({{0.0, i * spacing_m, 0.0}, slant_deg});
    return a;
  }

  std::size_t size() const { return elements.size(); }

  /// (F_theta, F_phi) of element k. Isotropic, so only the slant matters.
  std::array<double, 2> field(std::size_t k) const {
    const double z = deg_to_rad(elements[k].slant_deg);
    return {std::cos(z), std::sin(z)};
  }
};

// ---------------------------------------------------------------------------
// CIR
// ---------------------------------------------------------------------------

struct TimeGrid {
  double start = 0.0;
  double step = 1e-3;
  int count = 1;

  double at(int i) const { return start + step * i; }
};

enum class BackgroundNormalization { none, power_ratio };

struct SynthesisConfig {
  double o_isac = 1.0;
  double k_eo = 0.0;
  int n_shared = 0;
  TimeGrid time;
  double quantize_bandwidth = 0.0; // > 0 snaps delays to a 1/B grid
};

struct Tap {
  double delay_s = 0.0;
  Complex h;
};

struct Cir {
  std::uint64_t link_id = 0;
  std::uint64_t drop = 0;
  std::string mode;
  std::size_t n_rx = 0;
  std::size_t n_tx = 0;
  std::vector<double> times;
  std::vector<std::vector<Tap>> taps; // index (u * n_tx + s) * times.size() + t

  const std::vector<Tap>& at(std::size_t u, std::size_t s, std::size_t t) const {
    return taps[(u * n_tx + s) * times.size() + t];
  }

  double energy(std::size_t t = 0) const {
    double e = 0.0;
    for (std::size_t u = 0; u < n_rx; ++u)
      for (std::size_t s = 0; s < n_tx; ++s)
        for (const auto& tap : at(u, s, t)) e += std::norm(tap.h);
    return e;
  }
};

/// The paths of one part (target, background or EO) of a link.
struct LinkPaths {
  std::uint64_t link_id = 0;
  PathSet paths;
};

namespace detail {

inline Complex path_coefficient(const Path& p, const std::array<double, 2>& f_rx, const std::array<double, 2>& f_tx,
                                double rx_phase, double tx_phase, double t, double scale) {
  const Complex a = p.pol.tt * f_tx[0] + p.pol.tp * f_tx[1];
  const Complex b = p.pol.pt * f_tx[0] + p.pol.pp * f_tx[1];
  const Complex pol = f_rx[0] * a + f_rx[1] * b;
  const double amp = std::sqrt(p.power_linear()) * scale;
  return pol * amp * std::polar(1.0, p.phase + rx_phase + tx_phase + p.doppler_phase(t));
}

inline void merge_taps(std::vector<Tap>& taps) {
  std::stable_sort(taps.begin(), taps.end(), [](const Tap& a, const Tap& b) { return a.delay_s < b.delay_s; });
  std::vector<Tap> out;
  out.reserve(taps.size());
  for (const auto& tap : taps) {
    if (!out.empty() && out.back().delay_s == tap.delay_s)
      out.back().h += tap.h;
    else
      out.push_back(tap);
  }
  taps.swap(out);
}

} // namespace detail

/// Sums target, background and EO paths into per antenna-pair tap lists.
/// Antenna element positions are taken in the global frame.
inline Cir assemble_cir(const LinkPaths& target, const LinkPaths& background, const LinkPaths& eo,
                        const SynthesisConfig& cfg, const AntennaArray& tx_ant, const AntennaArray& rx_ant,
                        double lambda) {
  if (target.link_id != background.link_id || target.link_id != eo.link_id)
    throw InconsistentLink("channel parts belong to different links");
  if (!(cfg.time.step > 0.0) || cfg.time.count < 1) throw ConfigError("time grid needs step > 0 and count >= 1");
  if (cfg.k_eo < 0.0 || cfg.k_eo > 1.0) throw ConfigError("K_EO must be in [0, 1]");
  Cir cir;
  cir.link_id = target.link_id;
  cir.n_rx = rx_ant.size();
  cir.n_tx = tx_ant.size();
  for (int i = 0; i < cfg.time.count; ++i) cir.times.push_back(cfg.time.at(i));
  cir.taps.resize(cir.n_rx * cir.n_tx * cir.times.size());

  const double stochastic = std::sqrt(1.0 - cfg.k_eo);
  struct Part {
    const PathSet* paths;
    double scale;
  };
  const std::array<Part, 3> parts{{{&target.paths, stochastic},
                                   {&background.paths, cfg.o_isac * stochastic},
                                   {&eo.paths, std::sqrt(cfg.k_eo)}}};
  const double k0 = kTwoPi / lambda;
  for (const auto& part : parts) {
    if (part.scale == 0.0) continue;
    for (const auto& p : *part.paths) {
      const Vector3 r_rx = spherical_unit_vector(p.arrival);
      const Vector3 r_tx = spherical_unit_vector(p.departure);
      double delay = p.delay_s;
      if (cfg.quantize_bandwidth > 0.0) delay = std::round(delay * cfg.quantize_bandwidth) / cfg.quantize_bandwidth;
      for (std::size_t u = 0; u < cir.n_rx; ++u) {
        const double rx_phase = k0 * r_rx.dot(rx_ant.elements[u].position);
        const auto f_rx = rx_ant.field(u);
        for (std::size_t s = 0; s < cir.n_tx; ++s) {
          const double tx_phase = k0 * r_tx.dot(tx_ant.elements[s].position);
          const auto f_tx = tx_ant.field(s);
          for (std::size_t t = 0; t < cir.times.size(); ++t) {
            const Complex h = detail::path_coefficient(p, f_rx, f_tx, rx_phase, tx_phase, cir.times[t], part.scale);
            cir.taps[(u * cir.n_tx + s) * cir.times.size() + t].push_back({delay, h});
          }
        }
      }
    }
  }
  for (auto& taps : cir.taps) detail::merge_taps(taps);
  return cir;
}

/// Background scaling O_isac. power_ratio makes background energy rho times the target energy.
inline double normalize_background(const PathSet& target, const PathSet& background, BackgroundNormalization mode,
                                   double rho = 1.0) {
  if (mode == BackgroundNormalization::none) return 1.0;
  const double pt = total_power(target);
  const double pb = total_power(background);
  if (!(pt > 0.0) || !(pb > 0.0)) throw EmptyPathSet("background normalization needs non-empty parts");
  return std::sqrt(rho * pt / pb);
}

// ---------------------------------------------------------------------------
// Shared clusters
// ---------------------------------------------------------------------------

/// Node positions a cluster set was generated between.
struct SegmentEnds {
  Vector3 tx;
  Vector3 rx;
};

/// Single-bounce scatterer that explains a cluster's relative delay and departure direction.
inline Vector3 scatterer_position(const SegmentEnds& ends, double relative_delay_s, const SphericalAngle& departure) {
  const Vector3 u = spherical_unit_vector(departure);
  const Vector3 w = ends.tx - ends.rx;
  const double len = w.norm() + kSpeedOfLight * relative_delay_s;
  const double denom = 2.0 * (len + w.dot(u));
  if (!(denom > 0.0)) throw DegenerateGeometry("cluster departs straight toward the receiver");
  const double r = (len * len - w.dot(w)) / denom;
  return ends.tx + u * r;
}

struct SharedClusters {
  ClusterSet comm;
  ClusterSet sens;
  std::vector<int> sens_clusters; // which sensing clusters were shared
  std::vector<int> comm_clusters; // which communication clusters they replaced
  std::vector<Vector3> scatterers;
};

namespace detail {

inline void renormalize(ClusterSet& cs) {
  const double sum = std::accumulate(cs.powers.begin(), cs.powers.end(), 0.0);
  if (!(sum > 0.0)) return;
  for (auto& p : cs.powers) p /= sum;
  const double scale = cs.los ? 1.0 / (cs.k_linear + 1.0) : 1.0;
  std::vector<int> per_cluster(cs.powers.size(), 0);
  for (const auto& r : cs.rays)
    if (!r.is_los()) ++per_cluster[std::size_t(r.cluster)];
  for (auto& r : cs.rays)
    if (!r.is_los()) r.power = cs.powers[std::size_t(r.cluster)] * scale / per_cluster[std::size_t(r.cluster)];
}

inline SphericalAngle shifted(const SphericalAngle& ray, const SphericalAngle& from, const SphericalAngle& to) {
  return make_angle(ray.zenith - from.zenith + to.zenith, ray.azimuth - from.azimuth + to.azimuth);
}

} // namespace detail

/// Injects n_shared sensing clusters, chosen uniformly, into the communication
/// set in place of its weakest clusters. The injected clusters keep their
/// scatterer: delay and angles are recomputed for the communication geometry.
inline SharedClusters share_clusters(const ClusterSet& comm, const SegmentEnds& comm_ends, const ClusterSet& sens,
                                     const SegmentEnds& sens_ends, int n_shared, Rng& rng) {
  const int n_comm = int(comm.powers.size());
  const int n_sens = int(sens.powers.size());
  if (n_shared < 0 || n_shared > std::min(n_comm, n_sens))
    throw TooManyShared("cannot share " + std::to_string(n_shared) + " clusters");
  SharedClusters out{comm, sens, {}, {}, {}};
  if (n_shared == 0) return out;

  std::vector<int> pick(static_cast<std::size_t>(n_sens));
  std::iota(pick.begin(), pick.end(), 0);
  std::shuffle(pick.begin(), pick.end(), rng.engine());
  pick.resize(std::size_t(n_shared));
  std::sort(pick.begin(), pick.end());

  std::vector<int> weakest(static_cast<std::size_t>(n_comm));
  std::iota(weakest.begin(), weakest.end(), 0);
  std::stable_sort(weakest.begin(), weakest.end(), [&](int a, int b) { return comm.powers[a] < comm.powers[b]; });
  weakest.resize(std::size_t(n_shared));

  const double d_comm = distance(comm_ends.tx, comm_ends.rx);
  for (int k = 0; k < n_shared; ++k) {
    const int si = pick[std::size_t(k)];
    const int ci = weakest[std::size_t(k)];
    const Vector3 s = scatterer_position(sens_ends, sens.delays[std::size_t(si)], sens.cluster_departure[std::size_t(si)]);
    const double delay = (distance(comm_ends.tx, s) + distance(s, comm_ends.rx) - d_comm) / kSpeedOfLight;
    const SphericalAngle dep = direction_angle(s - comm_ends.tx);
    const SphericalAngle arr = direction_angle(s - comm_ends.rx);
    auto& c = out.comm;
    const SphericalAngle old_dep = c.cluster_departure[std::size_t(ci)];
    const SphericalAngle old_arr = c.cluster_arrival[std::size_t(ci)];
    c.delays[std::size_t(ci)] = delay;
    c.powers[std::size_t(ci)] = sens.powers[std::size_t(si)];
    c.cluster_departure[std::size_t(ci)] = dep;
    c.cluster_arrival[std::size_t(ci)] = arr;
    for (auto& r : c.rays) {
      if (r.cluster != ci) continue;
      r.delay_s = delay;
      r.departure = detail::shifted(r.departure, old_dep, dep);
      r.arrival = detail::shifted(r.arrival, old_arr, arr);
    }
    out.sens_clusters.push_back(si);
    out.comm_clusters.push_back(ci);
    out.scatterers.push_back(s);
  }
  detail::renormalize(out.comm);
  detail::renormalize(out.sens);
  return out;
}

// ---------------------------------------------------------------------------
// Export
// ---------------------------------------------------------------------------

struct CirRecord {
  double drop, link_id, u, s, t_s, tap_idx, delay_s, re, im;
};

inline std::vector<CirRecord> cir_records(const Cir& cir) {
  std::vector<CirRecord> out;
  for (std::size_t u = 0; u < cir.n_rx; ++u)
    for (std::size_t s = 0; s < cir.n_tx; ++s)
      for (std::size_t t = 0; t < cir.times.size(); ++t) {
        const auto& taps = cir.at(u, s, t);
        for (std::size_t k = 0; k < taps.size(); ++k)
          out.push_back({double(cir.drop), double(cir.link_id), double(u), double(s), cir.times[t], double(k),
                         taps[k].delay_s, taps[k].h.real(), taps[k].h.imag()});
      }
  return out;
}

inline constexpr const char* kCirCsvHeader = "drop,link_id,u,s,t_s,tap_idx,delay_s,re,im";

inline void write_cir_csv_row(std::ostream& os, const CirRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.0f,%.0f,%.0f,%.0f,%.17g,%.0f,%.17g,%.17g,%.17g\n", r.drop, r.link_id, r.u, r.s,
                r.t_s, r.tap_idx, r.delay_s, r.re, r.im);
  os << buf;
}

inline constexpr char kCirMagic[8] = {'I', 'S', 'A', 'C', 'C', 'I', 'R', '1'};

namespace detail {

inline void put_le64(std::ostream& os, std::uint64_t v) {
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = char((v >> (8 * i)) & 0xFF);
  os.write(b, 8);
}

inline void put_f64(std::ostream& os, double d) {
  std::uint64_t v;
  std::memcpy(&v, &d, sizeof v);
  put_le64(os, v);
}

} // namespace detail

inline void write_cir_binary(std::ostream& os, const std::vector<CirRecord>& records) {
  os.write(kCirMagic, 8);
  detail::put_le64(os, records.size());
  for (const auto& r : records)
    for (double v : {r.drop, r.link_id, r.u, r.s, r.t_s, r.tap_idx, r.delay_s, r.re, r.im}) detail::put_f64(os, v);
}

} // namespace isac
