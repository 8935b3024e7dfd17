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

#include "background_channel.hpp"
#include "campaign.hpp"
#include "config.hpp"
#include "constants.hpp"
#include "doppler.hpp"
#include "enums.hpp"
#include "eo.hpp"
#include "error.hpp"
#include "geometry.hpp"
#include "large_scale.hpp"
#include "path.hpp"
#include "random.hpp"
#include "rcs.hpp"
#include "scenario.hpp"
#include "small_scale.hpp"
#include "spatial_consistency.hpp"
#include "synthesis.hpp"
#include "target_channel.hpp"
