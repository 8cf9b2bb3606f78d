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

#include "samsim/scenario.hpp"

namespace samsim::testing {

// The fixed evaluation setup: 6x6 checkerboard, 64 frames x 4096 B per
// module, 8 tasks over a five-temperature trace pool, pre-fill 50%, seed 42.
// Mirrors configs/reference.cfg and configs/genspec.cfg.
std::vector<TraceSpec> reference_trace_specs();
TracePool reference_pool(uint64_t page_size = 4096, uint64_t seed = 900);
SimConfig reference_config();

}  // namespace samsim::testing
