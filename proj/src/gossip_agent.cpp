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

#include "samsim/gossip_agent.hpp"

namespace samsim {

GossipAgent::GossipAgent(SimContext& ctx, NodeRef self) : ctx_(ctx), self_(self) {}

void GossipAgent::start_monitoring() {
    if (!ctx_.monitoring_enabled) return;
    Cycles period = ctx_.cfg->emission_period;
    Cycles offset = static_cast<Cycles>(ctx_.mesh->linear(self_.coord)) % period;
    ctx_.engine->set_timer(self_, EmissionTick{}, offset);
}

void GossipAgent::handle_emission_tick() {
    emit_status();
    ctx_.engine->set_timer(self_, EmissionTick{}, ctx_.now() + ctx_.cfg->emission_period);
}

void GossipAgent::emit_status() {
    Cycles now = ctx_.now();
    StatusBody body;
    body.records.push_back(own_status());
    for (StatusRecord& rec : kb_.fresh_records(now, 2 * ctx_.cfg->emission_period))
        body.records.push_back(rec);

    for (const TileCoord& tile : ctx_.mesh->neighborhood(self_.coord, ctx_.cfg->radius)) {
        ctx_.engine->post_message(
            make_message(self_, ctx_.mesh->node(tile), StatusBody{body.records}));
    }
}

void GossipAgent::merge_status(const StatusBody& body) {
    for (const StatusRecord& rec : body.records) {
        if (rec.node == self_) continue;
        kb_.merge(rec);
    }
}

}  // namespace samsim
