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

#include "samsim/optimizer.hpp"

#include <cmath>

#include "samsim/wire.hpp"

namespace samsim {

Cycles migration_cost(const NodeRef& source, const NodeRef& target,
                      const NodeRef& owner, uint32_t n_pages,
                      const ProposeContext& ctx) {
    Cycles data = static_cast<Cycles>(n_pages) *
                  ctx.latency->message_latency(source.coord, target.coord, ctx.page_size);
    Cycles bookkeeping =
        2 * ctx.latency->message_latency(source.coord, owner.coord, kHeaderBytes);
    return data + bookkeeping;
}

namespace {

bool beats_cost(Cycles benefit, Cycles cost, double cost_factor) {
    return static_cast<double>(benefit) > cost_factor * static_cast<double>(cost);
}

}  // namespace

std::optional<Proposition> propose_locality(const TriggerFired& trigger,
                                            const NodeRef& source,
                                            const RegionFacts& region,
                                            const KnowledgeBase& kb,
                                            const ProposeContext& ctx) {
    const int d0 = hop_distance(region.owner.coord, source.coord);
    const StatusRecord* best = nullptr;
    int best_d = d0;
    for (const auto& [node, rec] : kb.records()) {
        if (node.role != Role::Mem || node == source) continue;
        if (rec.free_frames < region.n_pages) continue;
        int d = hop_distance(region.owner.coord, node.coord);
        if (d < best_d) {  // map order gives (y,x) ascending on ties
            best_d = d;
            best = &rec;
        }
    }
    if (!best) return std::nullopt;

    Cycles benefit = trigger.count * static_cast<Cycles>(d0 - best_d) * 2 *
                     ctx.latency->per_hop_cycles;
    Cycles cost = migration_cost(source, best->node, region.owner, region.n_pages, ctx);
    if (!beats_cost(benefit, cost, ctx.cost_factor)) return std::nullopt;

    Proposition p;
    p.kind = OptimizerKind::Locality;
    p.region_id = region.region_id;
    p.source = source;
    p.target = best->node;
    p.owner = region.owner;
    p.n_pages = region.n_pages;
    p.vpage_base = region.vpage_base;
    p.expected_benefit = benefit;
    p.migration_cost = cost;
    return p;
}

std::optional<Proposition> propose_balance(const TriggerFired& hottest,
                                           const NodeRef& source,
                                           double source_utilization,
                                           const RegionFacts& region,
                                           const KnowledgeBase& kb,
                                           const ProposeContext& ctx) {
    if (source_utilization <= ctx.balance_threshold) return std::nullopt;

    const StatusRecord* best = nullptr;
    for (const auto& [node, rec] : kb.records()) {
        if (node.role != Role::Mem || node == source) continue;
        if (rec.free_frames < region.n_pages) continue;
        if (!best || rec.utilization < best->utilization) best = &rec;
    }
    if (!best) return std::nullopt;

    double delta = source_utilization - best->utilization;
    if (delta <= 0.0) return std::nullopt;
    Cycles benefit = static_cast<Cycles>(std::floor(
        static_cast<double>(hottest.count) *
        static_cast<double>(ctx.latency->mem_service_cycles) * delta));
    Cycles cost = migration_cost(source, best->node, region.owner, region.n_pages, ctx);
    if (!beats_cost(benefit, cost, ctx.cost_factor)) return std::nullopt;

    Proposition p;
    p.kind = OptimizerKind::Balance;
    p.region_id = region.region_id;
    p.source = source;
    p.target = best->node;
    p.owner = region.owner;
    p.n_pages = region.n_pages;
    p.vpage_base = region.vpage_base;
    p.expected_benefit = benefit;
    p.migration_cost = cost;
    return p;
}

}  // namespace samsim
