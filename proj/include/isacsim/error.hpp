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

#include <stdexcept>
#include <string>

namespace isac {

enum class ErrorCode {
  config,
  placement_infeasible,
  io,
  no_face_covers,
  unsupported_scenario,
  distance_out_of_range,
  degenerate_geometry,
  empty_path_set,
  too_many_shared,
  inconsistent_link,
};

// All library errors derive from this; the code maps onto CLI exit statuses.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

class ConfigError : public Error {
public:
  explicit ConfigError(const std::string& what) : Error(ErrorCode::config, what) {}
};

class PlacementInfeasible : public Error {
public:
  explicit PlacementInfeasible(const std::string& what) : Error(ErrorCode::placement_infeasible, what) {}
};

class IoError : public Error {
public:
  explicit IoError(const std::string& what) : Error(ErrorCode::io, what) {}
};

class NoFaceCovers : public Error {
public:
  explicit NoFaceCovers(const std::string& what) : Error(ErrorCode::no_face_covers, what) {}
};

class UnsupportedScenario : public Error {
public:
  explicit UnsupportedScenario(const std::string& what) : Error(ErrorCode::unsupported_scenario, what) {}
};

class DistanceOutOfRange : public Error {
public:
  explicit DistanceOutOfRange(const std::string& what) : Error(ErrorCode::distance_out_of_range, what) {}
};

class DegenerateGeometry : public Error {
public:
  explicit DegenerateGeometry(const std::string& what) : Error(ErrorCode::degenerate_geometry, what) {}
};

class EmptyPathSet : public Error {
public:
  explicit EmptyPathSet(const std::string& what) : Error(ErrorCode::empty_path_set, what) {}
};

class TooManyShared : public Error {
public:
  explicit TooManyShared(const std::string& what) : Error(ErrorCode::too_many_shared, what) {}
};

class InconsistentLink : public Error {
public:
  explicit InconsistentLink(const std::string& what) : Error(ErrorCode::inconsistent_link, what) {}
};

} // namespace isac
