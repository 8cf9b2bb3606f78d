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

#include "samsim/simulation.hpp"

#include <cassert>

namespace samsim {

Simulation::Simulation(const SimConfig& cfg, const Scenario& scenario, SimOptions opts)
    : cfg_(cfg), mesh_(cfg.build_mesh()), engine_(mesh_, cfg_.latency, metrics_),
      opts_(opts) {
    cfg_.validate();
    ctx_.cfg = &cfg_;
    ctx_.mesh = &mesh_;
    ctx_.engine = &engine_;
    ctx_.optimizer_enabled =
        opts_.optimizer_enabled && cfg_.optimizer != OptimizerKind::Off;
    ctx_.monitoring_enabled = opts_.monitoring_enabled;
    ctx_.hooks = opts_.hooks;
    ctx_.oracle = opts_.oracle;

    engine_.set_event_log(opts_.event_log);
    if (opts_.hooks && opts_.hooks->after_event)
        engine_.set_after_event_hook(opts_.hooks->after_event);

    agents_.resize(mesh_.tile_count());
    for (int i = 0; i < mesh_.tile_count(); ++i) {
        TileCoord tile = mesh_.coord(i);
        NodeRef node = mesh_.node(tile);
        if (node.role == Role::Mem)
            agents_[i] = std::make_unique<MemoryAgent>(ctx_, node);
        else
            agents_[i] = std::make_unique<CpuAgent>(ctx_, node);
        engine_.register_agent(tile, agents_[i].get());
    }

    for (const PrefillChunk& chunk : scenario.prefill)
        memory_agent(chunk.module).install_prefill(chunk);

    for (const auto& [cpu, tasks] : scenario.schedule)
        cpu_agent(cpu).set_schedule(tasks);

    for (int i = 0; i < mesh_.tile_count(); ++i) {
        agents_[i]->start_monitoring();
        if (mesh_.role(mesh_.coord(i)) == Role::Mem)
            engine_.set_timer(agents_[i]->self(), MonitorBoundary{},
                              cfg_.monitoring_cycle_period);
    }
    for (const auto& [cpu, tasks] : scenario.schedule) cpu_agent(cpu).start_workload();
}

MemoryAgent& Simulation::memory_agent(const TileCoord& tile) {
    auto* agent = dynamic_cast<MemoryAgent*>(agents_.at(mesh_.linear(tile)).get());
    if (!agent) throw SimError("tile " + to_string(tile) + " is not a memory module");
    return *agent;
}

CpuAgent& Simulation::cpu_agent(const TileCoord& tile) {
    auto* agent = dynamic_cast<CpuAgent*>(agents_.at(mesh_.linear(tile)).get());
    if (!agent) throw SimError("tile " + to_string(tile) + " is not a cpu");
    return *agent;
}

RunMetrics Simulation::run() {
    metrics_.makespan = engine_.run_to_completion(cfg_.max_cycles);

    if (opts_.oracle) {
        for (const TileCoord& tile : mesh_.cpu_tiles()) {
            CpuAgent& cpu = cpu_agent(tile);
            for (const CpuAgent::LeakedRegion& leak : cpu.leaked_regions()) {
                NodeRef host = cpu.region_module(leak.region_id);
                opts_.oracle->final_regions[{leak.task_uid, leak.handle}] =
                    memory_agent(host.coord).region_bytes(leak.region_id);
            }
        }
    }
    return metrics_;
}

void Simulation::check_region_consistency() const {
    // region -> host derived from the page tables: exactly one module each
    std::map<RegionId, std::set<NodeRef>> mapped;
    for (int i = 0; i < mesh_.tile_count(); ++i) {
        const auto* cpu = dynamic_cast<const CpuAgent*>(agents_[i].get());
        if (!cpu) continue;
        for (const auto& [vpage, pte] : cpu->page_table())
            mapped[pte.region_id].insert(pte.module);
    }
    for (const auto& [region, modules] : mapped) {
        if (modules.size() != 1)
            throw SimError("region " + std::to_string(region) + " mapped to " +
                           std::to_string(modules.size()) + " modules");
    }

    for (int i = 0; i < mesh_.tile_count(); ++i) {
        const auto* mem = dynamic_cast<const MemoryAgent*>(agents_[i].get());
        if (!mem) continue;
        uint64_t total = mem->free_frames() + mem->reserved_frames() + mem->frames_in_records();
        if (total != mem->n_frames())
            throw SimError("frame conservation violated at " + to_string(mem->self()));
    }

    // every mapped region is hosted where the table says
    for (const auto& [region, modules] : mapped) {
        const NodeRef& host = *modules.begin();
        const auto* mem = dynamic_cast<const MemoryAgent*>(
            agents_[mesh_.linear(host.coord)].get());
        if (!mem || !mem->records().contains(region))
            throw SimError("region " + std::to_string(region) + " not hosted at " +
                           to_string(host));
    }
}

RunMetrics run_simulation(const SimConfig& cfg, const Scenario& scenario, SimOptions opts) {
    Simulation sim(cfg, scenario, opts);
    return sim.run();
}

}  // namespace samsim
