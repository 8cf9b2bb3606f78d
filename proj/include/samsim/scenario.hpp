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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "samsim/config.hpp"
#include "samsim/trace.hpp"

namespace samsim {

using TracePool = std::map<std::string, Trace>;

struct TaskInstance {
    const Trace* trace = nullptr;
    uint64_t task_uid = 0;  // unique per instance, seeds the write values
};

// Frames occupied before the measured window starts, emulating memory held
// by earlier workload; chunks drain at seeded release times.
struct PrefillChunk {
    TileCoord module;
    uint64_t region_id = 0;
    uint32_t n_frames = 0;
    std::optional<Cycles> release_at;

    friend bool operator==(const PrefillChunk&, const PrefillChunk&) = default;
};

struct Scenario {
    // Tasks per Cpu tile, run back to back (next starts at the previous E).
    std::map<TileCoord, std::vector<TaskInstance>> schedule;
    std::vector<PrefillChunk> prefill;
};

// Draws n_tasks from the pool and spreads them over shuffled Cpu tiles, then
// packs the pre-fill budget onto the modules nearest the task cores.
// Deterministic in (cfg, pool).
Scenario build_scenario(const SimConfig& cfg, const Mesh& mesh, const TracePool& pool);

// Loads every pool entry named in cfg.task_pool from cfg.traces_dir.
TracePool load_trace_pool(const SimConfig& cfg);

}  // namespace samsim
