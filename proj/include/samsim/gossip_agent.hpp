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

#include "samsim/context.hpp"
#include "samsim/scenario.hpp"

namespace samsim {

// Shared monitoring behavior: every agent periodically emits its status to
// the hop-bounded neighborhood and keeps a freshest-wins knowledge base of
// what it has heard. Outgoing messages piggyback cached records younger than
// 2 x emission_period, so knowledge spreads one radius per period.
class GossipAgent : public Agent {
public:
    GossipAgent(SimContext& ctx, NodeRef self);

    const NodeRef& self() const { return self_; }
    const KnowledgeBase& knowledge() const { return kb_; }

    // Schedules the first emission at the node's phase offset.
    void start_monitoring();

protected:
    virtual StatusRecord own_status() const = 0;

    void emit_status();
    void merge_status(const StatusBody& body);
    void handle_emission_tick();

    SimContext& ctx_;
    NodeRef self_;
    KnowledgeBase kb_;
};

}  // namespace samsim
