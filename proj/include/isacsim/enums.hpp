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

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace isac {

enum class ScenarioId { uma_av, uma, umi, rma, inh, inf, urban_grid };
enum class SensingMode { trp_monostatic, trp_trp, trp_ut, ut_ut, ut_monostatic };
enum class TargetType { uav_small, uav_large, human_m1, human_m2, vehicle, agv };

namespace detail {

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table, std::string_view name) {
  for (const auto& [value, text] : table)
    if (text == name) return value;
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E value) {
  for (const auto& [v, text] : table)
    if (v == value) return text;
  return "?";
}

inline constexpr std::array<std::pair<ScenarioId, std::string_view>, 7> kScenarioNames{{
    {ScenarioId::uma_av, "UMa-AV"},
    {ScenarioId::uma, "UMa"},
    {ScenarioId::umi, "UMi"},
    {ScenarioId::rma, "RMa"},
    {ScenarioId::inh, "InH"},
    {ScenarioId::inf, "InF"},
    {ScenarioId::urban_grid, "UrbanGrid"},
}};

inline constexpr std::array<std::pair<SensingMode, std::string_view>, 5> kModeNames{{
    {SensingMode::trp_monostatic, "TRP-monostatic"},
    {SensingMode::trp_trp, "TRP-TRP"},
    {SensingMode::trp_ut, "TRP-UT"},
    {SensingMode::ut_ut, "UT-UT"},
    {SensingMode::ut_monostatic, "UT-monostatic"},
}};

inline constexpr std::array<std::pair<TargetType, std::string_view>, 6> kTargetNames{{
    {TargetType::uav_small, "uav_small"},
    {TargetType::uav_large, "uav_large"},
    {TargetType::human_m1, "human_m1"},
    {TargetType::human_m2, "human_m2"},
    {TargetType::vehicle, "vehicle"},
    {TargetType::agv, "agv"},
}};

} // namespace detail

inline std::optional<ScenarioId> parse_scenario(std::string_view s) { return detail::lookup(detail::kScenarioNames, s); }
inline std::optional<SensingMode> parse_sensing_mode(std::string_view s) { return detail::lookup(detail::kModeNames, s); }
inline std::optional<TargetType> parse_target_type(std::string_view s) { return detail::lookup(detail::kTargetNames, s); }

inline std::string to_string(ScenarioId v) { return std::string(detail::name_of(detail::kScenarioNames, v)); }
inline std::string to_string(SensingMode v) { return std::string(detail::name_of(detail::kModeNames, v)); }
inline std::string to_string(TargetType v) { return std::string(detail::name_of(detail::kTargetNames, v)); }

inline bool is_monostatic(SensingMode m) {
  return m == SensingMode::trp_monostatic || m == SensingMode::ut_monostatic;
}

inline bool is_aerial_scenario(ScenarioId id) { return id == ScenarioId::uma_av; }

} // namespace isac
