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

#include <functional>
#include <optional>
#include <ostream>
#include <queue>
#include <variant>
#include <vector>

#include "samsim/message.hpp"
#include "samsim/metrics.hpp"

namespace samsim {

struct SimError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DeadlockDetected : SimError {
    using SimError::SimError;
};

// Timer tags. Which agent fields a tag is fixed by who set it.
struct EmissionTick {};
struct MonitorBoundary {};
struct ServiceDone { Message request; };
struct VoteTimeout { PropositionId proposition_id = 0; };
struct MigrateSend { PropositionId proposition_id = 0; };
struct FreeRetry { RegionId region_id = 0; };
struct PrefillRelease { RegionId region_id = 0; };

using TimerTag = std::variant<EmissionTick, MonitorBoundary, ServiceDone, VoteTimeout,
                              MigrateSend, FreeRetry, PrefillRelease>;

struct TraceStepMark {};

class Agent {
public:
    virtual ~Agent() = default;
    virtual void on_message(const Message& m) = 0;
    virtual void on_timer(const TimerTag& tag) = 0;
    virtual void on_trace_step() {}
};

// Deterministic discrete-event kernel. Total event order is
// (fire_at, priority, seq) with priority 0 = Vote/Commit/Abort deliveries,
// 1 = other message deliveries, 2 = trace steps, 3 = timer expiries. Timers
// run last within a cycle so the monitoring reset is the final action of a
// boundary cycle.
class Engine {
public:
    Engine(const Mesh& mesh, const LatencyModel& latency, RunMetrics& metrics)
        : mesh_(mesh), latency_(latency), metrics_(metrics) {}

    Cycles now() const { return now_; }
    const Mesh& mesh() const { return mesh_; }
    const LatencyModel& latency() const { return latency_; }
    RunMetrics& metrics() { return metrics_; }

    void register_agent(const TileCoord& tile, Agent* agent);

    // Schedules delivery at now + message_latency(src, dst, payload) and
    // counts the message.
    void post_message(Message msg);
    void set_timer(const NodeRef& node, TimerTag tag, Cycles fire_at);
    void schedule_trace_step(const NodeRef& node, Cycles fire_at);

    // Stop-condition bookkeeping, maintained by the agents.
    void cpu_became_busy() { ++undrained_cpus_; }
    void cpu_drained() { --undrained_cpus_; }
    void request_issued() { ++outstanding_requests_; }
    void request_completed() { --outstanding_requests_; }
    void vote_opened() { ++active_votes_; }
    void vote_closed() { --active_votes_; }
    void note_task_complete() { last_task_complete_ = now_; }

    // Processes events until the workload is drained and no protocol is in
    // flight; returns the cycle of the last trace-completing event.
    Cycles run_to_completion(Cycles max_cycles);

    // Processes every event with fire_at <= t regardless of pending work;
    // for instrumented partial runs.
    void run_until(Cycles t);

    void set_event_log(std::ostream* log) { event_log_ = log; }
    // Invoked after every processed event (test instrumentation).
    void set_after_event_hook(std::function<void(Cycles)> hook) {
        after_event_ = std::move(hook);
    }

    uint64_t posted_messages() const { return posted_; }
    uint64_t delivered_messages() const { return delivered_; }
    uint64_t undelivered_messages() const { return posted_ - delivered_; }

private:
    struct Event {
        Cycles fire_at = 0;
        uint32_t priority = 0;
        uint64_t seq = 0;
        int target = 0;  // linear tile index
        std::variant<Message, TimerTag, TraceStepMark> body;
    };
    struct EventOrder {
        bool operator()(const Event& a, const Event& b) const {
            if (a.fire_at != b.fire_at) return a.fire_at > b.fire_at;
            if (a.priority != b.priority) return a.priority > b.priority;
            return a.seq > b.seq;
        }
    };

    bool work_pending() const {
        return undrained_cpus_ > 0 || outstanding_requests_ > 0 || active_votes_ > 0 ||
               essential_in_flight_ > 0;
    }
    void enqueue(Event ev);
    void process(Event ev);
    void log_event(const Event& ev) const;

    const Mesh& mesh_;
    const LatencyModel& latency_;
    RunMetrics& metrics_;
    std::vector<Agent*> agents_;
    std::priority_queue<Event, std::vector<Event>, EventOrder> queue_;

    Cycles now_ = 0;
    uint64_t next_seq_ = 0;
    uint64_t posted_ = 0;
    uint64_t delivered_ = 0;

    int undrained_cpus_ = 0;
    int outstanding_requests_ = 0;
    int active_votes_ = 0;
    int essential_in_flight_ = 0;  // non-Status messages
    Cycles last_task_complete_ = 0;

    std::ostream* event_log_ = nullptr;
    std::function<void(Cycles)> after_event_;
};

}  // namespace samsim
