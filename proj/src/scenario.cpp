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

#include "samsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "samsim/rng.hpp"

namespace samsim {

namespace {

constexpr uint32_t kPrefillChunkFrames = 4;
constexpr uint64_t kPrefillRegionBase = 1ULL << 63;
// Releases start after the opening allocation burst has settled, so phase-1
// regions of starved cores really do land far out.
constexpr Cycles kPrefillReleaseStart = 2500;

}  // namespace

TracePool load_trace_pool(const SimConfig& cfg) {
    TracePool pool;
    for (const std::string& name : cfg.task_pool) {
        std::string path = cfg.traces_dir + "/" + name;
        if (path.find(".trace") == std::string::npos) path += ".trace";
        pool.emplace(name, load_trace_file(path, cfg.page_size));
    }
    return pool;
}

Scenario build_scenario(const SimConfig& cfg, const Mesh& mesh, const TracePool& pool) {
    if (pool.empty()) throw ConfigError("task pool is empty");
    Scenario sc;
    Rng rng(mix64(cfg.seed, 0x5ca1ab1e));

    // pool entries in name order; instances drawn uniformly
    std::vector<const Trace*> traces;
    for (const auto& [name, trace] : pool) traces.push_back(&trace);

    // round-robin over a seeded shuffle of the Cpu tiles
    std::vector<TileCoord> cpus = mesh.cpu_tiles();
    for (size_t i = cpus.size(); i > 1; --i)
        std::swap(cpus[i - 1], cpus[rng.below(i)]);

    for (uint32_t t = 0; t < cfg.n_tasks; ++t) {
        const Trace* trace = traces[rng.below(traces.size())];
        TileCoord cpu = cpus[t % cpus.size()];
        uint64_t uid = mix64(mix64(cfg.seed, mesh.linear(cpu)),
                             sc.schedule[cpu].size());
        sc.schedule[cpu].push_back(TaskInstance{trace, uid});
    }

    // Pre-fill budget, packed so that whole core neighborhoods fill up: task
    // cores in order of how small their nearby module set is (corners first,
    // so the budget starves them deepest), each core's modules nearest-first.
    uint64_t total_frames =
        static_cast<uint64_t>(mesh.mem_tiles().size()) * cfg.frames_per_module;
    uint64_t budget = static_cast<uint64_t>(
        std::floor(cfg.prefill_fraction * static_cast<double>(total_frames)));
    if (budget > total_frames)
        throw ConfigError("infeasible pre-fill: fraction exceeds capacity");
    if (budget == 0 || sc.schedule.empty()) return sc;

    std::vector<TileCoord> task_cores;
    for (const auto& [cpu, tasks] : sc.schedule) task_cores.push_back(cpu);
    auto nearby_modules = [&](const TileCoord& core) {
        size_t n = 0;
        for (const TileCoord& m : mesh.mem_tiles())
            if (hop_distance(core, m) <= 3) ++n;
        return n;
    };
    std::stable_sort(task_cores.begin(), task_cores.end(),
                     [&](const TileCoord& a, const TileCoord& b) {
                         size_t na = nearby_modules(a), nb = nearby_modules(b);
                         if (na != nb) return na < nb;
                         return a < b;
                     });

    uint64_t next_region = kPrefillRegionBase;
    std::set<TileCoord> filled;
    auto fill_module = [&](const TileCoord& module) {
        if (budget == 0 || filled.contains(module)) return;
        filled.insert(module);
        uint64_t fill = std::min<uint64_t>(budget, cfg.frames_per_module);
        budget -= fill;
        while (fill > 0) {
            uint32_t chunk =
                static_cast<uint32_t>(std::min<uint64_t>(fill, kPrefillChunkFrames));
            fill -= chunk;
            PrefillChunk pc;
            pc.module = module;
            pc.region_id = next_region++;
            pc.n_frames = chunk;
            if (cfg.prefill_release_span > 0)
                pc.release_at = kPrefillReleaseStart + rng.below(cfg.prefill_release_span);
            sc.prefill.push_back(pc);
        }
    };
    for (const TileCoord& core : task_cores)
        for (const TileCoord& module : mesh.mem_tiles_by_distance(core)) {
            if (hop_distance(core, module) > 3) break;
            fill_module(module);
        }
    // leftover budget spreads over the remaining modules in scan order
    for (const TileCoord& module : mesh.mem_tiles()) fill_module(module);
    return sc;
}

}  // namespace samsim
