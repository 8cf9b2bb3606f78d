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
#include <optional>

#include "samsim/config.hpp"
#include "samsim/monitoring.hpp"

namespace samsim {

using PropositionId = uint64_t;

// A concrete migration proposal: move region_id from source to target,
// weighed benefit against cost. Emitted only when
// expected_benefit > cost_factor * migration_cost.
struct Proposition {
    PropositionId proposition_id = 0;  // stamped by the proposer at vote start
    OptimizerKind kind = OptimizerKind::Locality;
    RegionId region_id = 0;
    NodeRef source;  // current host (Mem), the proposer
    NodeRef target;  // candidate host (Mem)
    NodeRef owner;   // the region's Cpu
    uint32_t n_pages = 0;
    uint64_t vpage_base = 0;  // carried so the target can rebuild the record
    Cycles expected_benefit = 0;
    Cycles migration_cost = 0;
};

// Static facts the proposer knows about the triggered region.
struct RegionFacts {
    RegionId region_id = 0;
    NodeRef owner;
    uint32_t n_pages = 0;
    uint64_t vpage_base = 0;
};

struct ProposeContext {
    const LatencyModel* latency = nullptr;
    uint64_t page_size = 4096;
    double cost_factor = 1.0;
    double balance_threshold = 0.8;
};

Cycles migration_cost(const NodeRef& source, const NodeRef& target,
                      const NodeRef& owner, uint32_t n_pages,
                      const ProposeContext& ctx);

// Latency/locality: pick the free candidate strictly closer to the owner,
// minimizing owner distance (ties by (y,x)). None when no closer candidate
// exists or the projected gain does not beat the migration cost.
std::optional<Proposition> propose_locality(const TriggerFired& trigger,
                                            const NodeRef& source,
                                            const RegionFacts& region,
                                            const KnowledgeBase& kb,
                                            const ProposeContext& ctx);

// Load balance: when this module is over balance_threshold, push the hottest
// region toward the least-utilized module with room.
std::optional<Proposition> propose_balance(const TriggerFired& hottest,
                                           const NodeRef& source,
                                           double source_utilization,
                                           const RegionFacts& region,
                                           const KnowledgeBase& kb,
                                           const ProposeContext& ctx);

}  // namespace samsim
