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

#include <memory>

#include "samsim/cpu_agent.hpp"
#include "samsim/memory_agent.hpp"

namespace samsim {

struct SimOptions {
    bool optimizer_enabled = true;
    bool monitoring_enabled = true;
    std::ostream* event_log = nullptr;
    InstrumentationHooks* hooks = nullptr;
    OracleCapture* oracle = nullptr;
};

// One complete simulation instance; independent instances share nothing
// mutable and may run on separate threads.
class Simulation {
public:
    Simulation(const SimConfig& cfg, const Scenario& scenario, SimOptions opts = {});

    RunMetrics run();

    const Mesh& mesh() const { return mesh_; }
    Engine& engine() { return engine_; }
    MemoryAgent& memory_agent(const TileCoord& tile);
    CpuAgent& cpu_agent(const TileCoord& tile);
    const RunMetrics& metrics() const { return metrics_; }

    // Safety sweep used by tests: every live region maps to one module, the
    // module really hosts it, and frame accounting balances everywhere.
    void check_region_consistency() const;

private:
    SimConfig cfg_;
    Mesh mesh_;
    RunMetrics metrics_;
    Engine engine_;
    SimOptions opts_;
    SimContext ctx_;
    std::vector<std::unique_ptr<GossipAgent>> agents_;  // by linear tile index
};

RunMetrics run_simulation(const SimConfig& cfg, const Scenario& scenario,
                          SimOptions opts = {});

}  // namespace samsim
