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

#include "support/reference_scenario.hpp"

#include <sstream>

#include "samsim/rng.hpp"

namespace samsim::testing {

std::vector<TraceSpec> reference_trace_specs() {
    // name, phases, pages/phase, accesses/phase, write_ratio, mean_delta:
    // a spread of access temperatures so thresholds bite at different levels,
    // weighted toward cool tasks (hot streams are the exception, as in a
    // loaded system)
    return {
        {"hot", 4, 2, 240, 0.3, 4.0},
        {"warm", 4, 1, 150, 0.3, 30.0},
        {"mild", 4, 1, 100, 0.3, 90.0},
        {"mild2", 4, 1, 80, 0.3, 120.0},
        {"cool", 4, 1, 48, 0.3, 230.0},
        {"cool2", 4, 1, 36, 0.3, 300.0},
        {"xcool", 4, 1, 24, 0.3, 520.0},
        {"xcool2", 4, 1, 18, 0.3, 650.0},
    };
}

TracePool reference_pool(uint64_t page_size, uint64_t seed) {
    TracePool pool;
    std::vector<TraceSpec> specs = reference_trace_specs();
    for (size_t i = 0; i < specs.size(); ++i) {
        std::istringstream in(generate_trace_text(specs[i], page_size, mix64(seed, i)));
        pool.emplace(specs[i].name, parse_trace(in, page_size));
    }
    return pool;
}

SimConfig reference_config() {
    SimConfig cfg;  // defaults already match the reference scenario
    cfg.mesh_width = 6;
    cfg.mesh_height = 6;
    cfg.frames_per_module = 64;
    cfg.page_size = 4096;
    cfg.n_tasks = 8;
    cfg.prefill_fraction = 0.5;
    cfg.seed = 42;
    cfg.monitoring_cycle_period = 5000;
    return cfg;
}

}  // namespace samsim::testing
