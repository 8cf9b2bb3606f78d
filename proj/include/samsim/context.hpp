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

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "samsim/config.hpp"
#include "samsim/engine.hpp"
#include "samsim/optimizer.hpp"

namespace samsim {

// Read-value stream and final region contents, compared against the
// zero-latency reference machine.
struct OracleCapture {
    std::map<uint64_t, std::vector<uint8_t>> reads;  // task_uid -> values in order
    // (task_uid, handle) -> bytes of regions still allocated at run end
    std::map<std::pair<uint64_t, uint32_t>, std::vector<uint8_t>> final_regions;

    friend bool operator==(const OracleCapture&, const OracleCapture&) = default;
};

struct CommitInfo {
    Proposition proposition;
    int pre_distance = 0;   // owner <-> source
    int post_distance = 0;  // owner <-> target
};

// Test instrumentation; all optional.
struct InstrumentationHooks {
    std::function<void(const CommitInfo&)> on_commit;
    std::function<void(const Proposition&)> on_proposition;
    // Counter crossings, whether or not a proposition came out of them.
    std::function<void(const NodeRef& module, const TriggerFired&)> on_trigger;
    // Return true to suppress a participant's Vote (timeout testing).
    std::function<bool(const NodeRef& voter, const Proposition&)> withhold_vote;
    std::function<void(Cycles)> after_event;
};

struct SimContext {
    const SimConfig* cfg = nullptr;
    const Mesh* mesh = nullptr;
    Engine* engine = nullptr;
    bool optimizer_enabled = true;
    bool monitoring_enabled = true;
    InstrumentationHooks* hooks = nullptr;
    OracleCapture* oracle = nullptr;

    Cycles now() const { return engine->now(); }
    RunMetrics& metrics() const { return engine->metrics(); }
};

}  // namespace samsim
