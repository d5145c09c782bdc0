// Copyright 2026 The thermal-jc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// Umbrella header.
#include "thermal_jc/csv.hpp"
#include "thermal_jc/discord_variational.hpp"
#include "thermal_jc/errors.hpp"
#include "thermal_jc/fock_oracle.hpp"
#include "thermal_jc/jc_thermal.hpp"
#include "thermal_jc/sweep.hpp"
#include "thermal_jc/xstate.hpp"
