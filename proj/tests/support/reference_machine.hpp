/*
 * Copyright 2026 The samsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "samsim/context.hpp"
#include "samsim/scenario.hpp"

namespace samsim::testing {

// Zero-latency sequential replay of a schedule. Independent of the
// simulator: no mesh, no placement, no timing — just per-task region byte
// arrays. Read values and final contents must match the simulation
// bit-for-bit.
OracleCapture reference_replay(const Scenario& scenario, uint64_t page_size);

}  // namespace samsim::testing
