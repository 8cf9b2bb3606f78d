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

#include <deque>
#include <map>
#include <set>

#include "samsim/context.hpp"
#include "samsim/gossip_agent.hpp"

namespace samsim {

struct AllocationRecord {
    RegionId region_id = 0;
    NodeRef owner;
    std::vector<uint32_t> frames;  // ordered
    uint64_t vpage_base = 0;
    bool locked = false;
    PropositionId lock_prop = 0;
    bool env = false;  // pre-fill occupancy, never accessed or migrated
};

// One autonomous memory module: owns frames, serves requests through a FIFO
// service queue, tracks access heat, proposes and coordinates migrations of
// its regions, and acts as migration target for others.
class MemoryAgent : public GossipAgent {
public:
    MemoryAgent(SimContext& ctx, NodeRef self);

    void on_message(const Message& m) override;
    void on_timer(const TimerTag& tag) override;

    // setup-time pre-fill occupancy
    void install_prefill(const PrefillChunk& chunk);

    // introspection
    uint32_t n_frames() const { return n_frames_; }
    uint32_t free_frames() const { return static_cast<uint32_t>(free_list_.size()); }
    uint32_t reserved_frames() const;
    const std::map<RegionId, AllocationRecord>& records() const { return records_; }
    const AssociativeCounterArray& counters() const { return counters_; }
    double utilization_now() const;
    std::vector<uint8_t> region_bytes(RegionId id) const;
    uint64_t frames_in_records() const;

protected:
    StatusRecord own_status() const override;

private:
    void handle_alloc(const Message& m);
    void handle_access(const Message& m);
    void handle_free(const Message& m);
    void service_done(const Message& request);
    void handle_status(const Message& m);
    void handle_propose(const Message& m);     // as target
    void handle_vote(const Message& m);        // as coordinator
    void handle_commit(const Message& m);      // as target
    void handle_abort(const Message& m);       // as target
    void handle_migrate_data(const Message& m);
    void handle_migrate_ack(const Message& m);
    void handle_table_update_ack(const Message& m);
    void monitoring_boundary();
    void vote_timeout(PropositionId pid);
    void send_migrate_data(PropositionId pid);
    void prefill_release(RegionId region_id);

    void on_counter_trigger(const TriggerFired& trigger);
    void start_vote(Proposition p);
    void finish_vote(PropositionId pid, bool committed);
    void enqueue_service(const Message& m);
    void release_reservation(PropositionId pid);

    std::vector<uint32_t> take_free_frames(uint32_t n);
    uint8_t* frame_byte(uint32_t frame, uint64_t offset);

    uint32_t n_frames_;
    uint64_t page_size_;
    std::vector<uint8_t> data_;            // n_frames * page_size
    std::set<uint32_t> free_list_;
    std::map<RegionId, AllocationRecord> records_;

    AssociativeCounterArray counters_;
    Cycles window_start_ = 0;
    Cycles busy_in_window_ = 0;
    uint64_t served_in_window_ = 0;
    Cycles busy_until_ = 0;

    // consensus state
    std::map<PropositionId, VoteState> votes_;               // as coordinator
    std::map<PropositionId, std::vector<uint32_t>> reservations_;  // as target
    std::map<RegionId, std::deque<Message>> pending_locked_;
    uint64_t next_prop_seq_ = 0;
};

}  // namespace samsim
