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

#include "samsim/engine.hpp"

#include <cassert>

namespace samsim {

namespace {

struct TimerName {
    std::string operator()(const EmissionTick&) const { return "EmissionTick"; }
    std::string operator()(const MonitorBoundary&) const { return "MonitorBoundary"; }
    std::string operator()(const ServiceDone&) const { return "ServiceDone"; }
    std::string operator()(const VoteTimeout& t) const {
        return "VoteTimeout prop=" + std::to_string(t.proposition_id);
    }
    std::string operator()(const MigrateSend& t) const {
        return "MigrateSend prop=" + std::to_string(t.proposition_id);
    }
    std::string operator()(const FreeRetry& t) const {
        return "FreeRetry region=" + std::to_string(t.region_id);
    }
    std::string operator()(const PrefillRelease& t) const {
        return "PrefillRelease region=" + std::to_string(t.region_id);
    }
};

}  // namespace

void Engine::register_agent(const TileCoord& tile, Agent* agent) {
    if (agents_.empty()) agents_.resize(mesh_.tile_count(), nullptr);
    agents_[mesh_.linear(tile)] = agent;
}

void Engine::enqueue(Event ev) {
    assert(ev.fire_at >= now_);
    ev.seq = next_seq_++;
    queue_.push(std::move(ev));
}

void Engine::post_message(Message msg) {
    Cycles latency = latency_.message_latency(msg.src.coord, msg.dst.coord, msg.payload_bytes);
    metrics_.msgs(msg.kind) += 1;
    ++posted_;
    if (msg.kind != MsgKind::Status) ++essential_in_flight_;
    Event ev;
    ev.fire_at = now_ + latency;
    ev.priority = is_control_kind(msg.kind) ? 0 : 1;
    ev.target = mesh_.linear(msg.dst.coord);
    ev.body = std::move(msg);
    enqueue(std::move(ev));
}

void Engine::set_timer(const NodeRef& node, TimerTag tag, Cycles fire_at) {
    assert(fire_at >= now_);
    Event ev;
    ev.fire_at = fire_at;
    ev.priority = 3;
    ev.target = mesh_.linear(node.coord);
    ev.body = std::move(tag);
    enqueue(std::move(ev));
}

void Engine::schedule_trace_step(const NodeRef& node, Cycles fire_at) {
    Event ev;
    ev.fire_at = fire_at;
    ev.priority = 2;
    ev.target = mesh_.linear(node.coord);
    ev.body = TraceStepMark{};
    enqueue(std::move(ev));
}

void Engine::log_event(const Event& ev) const {
    if (!event_log_) return;
    std::ostream& out = *event_log_;
    if (const Message* m = std::get_if<Message>(&ev.body)) {
        out << ev.fire_at << " " << to_string(m->kind) << " " << to_string(m->src)
            << " -> " << to_string(m->dst) << " " << summarize(*m) << "\n";
    } else if (const TimerTag* t = std::get_if<TimerTag>(&ev.body)) {
        NodeRef node = mesh_.node(mesh_.coord(ev.target));
        out << ev.fire_at << " Timer " << to_string(node) << " -> " << to_string(node)
            << " " << std::visit(TimerName{}, *t) << "\n";
    } else {
        NodeRef node = mesh_.node(mesh_.coord(ev.target));
        out << ev.fire_at << " TraceStep " << to_string(node) << " -> " << to_string(node)
            << "\n";
    }
}

void Engine::process(Event ev) {
    assert(ev.fire_at >= now_);
    now_ = ev.fire_at;
    Agent* agent = agents_.at(ev.target);
    assert(agent != nullptr);
    log_event(ev);
    if (Message* m = std::get_if<Message>(&ev.body)) {
        ++delivered_;
        if (m->kind != MsgKind::Status) --essential_in_flight_;
        agent->on_message(*m);
    } else if (TimerTag* t = std::get_if<TimerTag>(&ev.body)) {
        agent->on_timer(*t);
    } else {
        agent->on_trace_step();
    }
    if (after_event_) after_event_(now_);
}

Cycles Engine::run_to_completion(Cycles max_cycles) {
    while (work_pending()) {
        if (queue_.empty())
            throw DeadlockDetected(
                "event queue drained with work in flight (undrained=" +
                std::to_string(undrained_cpus_) + " outstanding=" +
                std::to_string(outstanding_requests_) + " votes=" +
                std::to_string(active_votes_) + ")");
        if (queue_.top().fire_at > max_cycles)
            throw SimError("simulation exceeded max_cycles=" + std::to_string(max_cycles));
        Event ev = queue_.top();
        queue_.pop();
        process(std::move(ev));
    }
    return last_task_complete_;
}

void Engine::run_until(Cycles t) {
    while (!queue_.empty() && queue_.top().fire_at <= t) {
        Event ev = queue_.top();
        queue_.pop();
        process(std::move(ev));
    }
    now_ = std::max(now_, t);
}

}  // namespace samsim
