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

#include <map>
#include <optional>
#include <set>

#include "samsim/context.hpp"
#include "samsim/gossip_agent.hpp"

namespace samsim {

struct PageTableEntry {
    NodeRef module;
    uint32_t frame = 0;
    RegionId region_id = 0;
};

struct RegionHandle {
    uint32_t handle = 0;
    RegionId region_id = 0;
    uint64_t vpage_base = 0;
    uint32_t n_pages = 0;
};

// The enriched MMU of one core: owns the core's virtual address space, finds
// memory by expanding-ring probing, replays the assigned traces as a simple
// in-order blocking core, and repoints its table when migrations commit.
class CpuAgent : public GossipAgent {
public:
    CpuAgent(SimContext& ctx, NodeRef self);

    void set_schedule(std::vector<TaskInstance> tasks);
    // Schedules the first trace step; call once before the run.
    void start_workload();

    void on_message(const Message& m) override;
    void on_timer(const TimerTag& tag) override;
    void on_trace_step() override;

    // vpage -> entry lookup; vaddr = vpage * page_size + offset.
    // Throws on an unmapped vpage (a protocol bug, aborts the run).
    PageTableEntry translate(uint64_t vaddr, uint64_t& offset_out) const;

    bool drained() const { return drained_; }
    const std::map<uint64_t, PageTableEntry>& page_table() const { return page_table_; }
    const std::map<uint32_t, RegionHandle>& live_handles() const { return handles_; }
    uint64_t current_task_uid() const;

    // Regions a finished task never freed; they stay allocated on their host.
    struct LeakedRegion {
        RegionId region_id = 0;
        uint64_t task_uid = 0;
        uint32_t handle = 0;
    };
    const std::vector<LeakedRegion>& leaked_regions() const { return leaked_; }
    NodeRef region_module(RegionId region_id) const { return module_of(region_id); }

protected:
    StatusRecord own_status() const override;

private:
    enum class Wait : uint8_t { None, Alloc, Data, Free };

    const TraceRecord& current_record() const;
    void issue_current();
    void advance();
    void handle_alloc_resp(const Message& m);
    void handle_data_resp(const Message& m);
    void handle_free_ack(const Message& m);
    void handle_propose(const Message& m);
    void handle_table_update(const Message& m);
    void send_alloc_probe();
    void send_free(RegionId region_id);
    NodeRef module_of(RegionId region_id) const;

    std::vector<TaskInstance> tasks_;
    size_t task_index_ = 0;
    size_t record_index_ = 0;
    bool drained_ = true;

    Wait wait_ = Wait::None;
    Cycles issued_at_ = 0;

    // in-flight allocation
    std::vector<TileCoord> alloc_ring_;
    size_t alloc_probe_ = 0;
    AllocReqBody pending_alloc_;
    uint32_t pending_alloc_handle_ = 0;

    std::optional<RegionId> freeing_region_;

    uint64_t next_vpage_ = 0;
    uint64_t next_region_seq_ = 0;
    std::map<uint64_t, PageTableEntry> page_table_;  // vpage -> entry
    std::map<uint32_t, RegionHandle> handles_;       // trace-local, cleared per task
    std::map<RegionId, RegionHandle> regions_;
    std::set<PropositionId> applied_updates_;
    std::vector<LeakedRegion> leaked_;
};

}  // namespace samsim
