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

#include "samsim/cpu_agent.hpp"

#include <cassert>

namespace samsim {

CpuAgent::CpuAgent(SimContext& ctx, NodeRef self) : GossipAgent(ctx, self) {}

void CpuAgent::set_schedule(std::vector<TaskInstance> tasks) {
    tasks_ = std::move(tasks);
    drained_ = tasks_.empty();
}

void CpuAgent::start_workload() {
    if (tasks_.empty()) return;
    ctx_.engine->cpu_became_busy();
    ctx_.engine->schedule_trace_step(self_, tasks_[0].trace->records[0].delta);
}

StatusRecord CpuAgent::own_status() const {
    return StatusRecord{self_, 0, 0.0, ctx_.now()};
}

uint64_t CpuAgent::current_task_uid() const {
    assert(task_index_ < tasks_.size());
    return tasks_[task_index_].task_uid;
}

const TraceRecord& CpuAgent::current_record() const {
    return tasks_[task_index_].trace->records[record_index_];
}

NodeRef CpuAgent::module_of(RegionId region_id) const {
    auto it = regions_.find(region_id);
    assert(it != regions_.end());
    auto pte = page_table_.find(it->second.vpage_base);
    assert(pte != page_table_.end());
    return pte->second.module;
}

PageTableEntry CpuAgent::translate(uint64_t vaddr, uint64_t& offset_out) const {
    uint64_t vpage = vaddr / ctx_.cfg->page_size;
    offset_out = vaddr % ctx_.cfg->page_size;
    auto it = page_table_.find(vpage);
    if (it == page_table_.end())
        throw SimError("page fault: vaddr " + std::to_string(vaddr) + " unmapped at " +
                       to_string(self_));
    return it->second;
}

void CpuAgent::on_trace_step() {
    issue_current();
}

void CpuAgent::issue_current() {
    assert(wait_ == Wait::None && !drained_);
    const TraceRecord& rec = current_record();
    switch (rec.op) {
        case TraceOp::Alloc: {
            RegionHandle rh;
            rh.handle = rec.handle;
            rh.region_id =
                (static_cast<uint64_t>(ctx_.mesh->linear(self_.coord)) + 1) << 32 |
                next_region_seq_++;
            rh.vpage_base = next_vpage_;
            rh.n_pages = rec.n_pages;
            next_vpage_ += rec.n_pages;

            pending_alloc_ = AllocReqBody{self_, rh.region_id, rh.n_pages, rh.vpage_base};
            pending_alloc_handle_ = rec.handle;
            handles_.emplace(rec.handle, rh);
            regions_.emplace(rh.region_id, rh);
            alloc_ring_ = ctx_.mesh->mem_tiles_by_distance(self_.coord);
            alloc_probe_ = 0;
            wait_ = Wait::Alloc;
            ctx_.engine->request_issued();
            send_alloc_probe();
            break;
        }
        case TraceOp::Read:
        case TraceOp::Write: {
            auto hit = handles_.find(rec.handle);
            assert(hit != handles_.end());
            const RegionHandle& rh = hit->second;
            uint64_t vaddr = rh.vpage_base * ctx_.cfg->page_size + rec.offset;
            uint64_t offset = 0;
            PageTableEntry pte = translate(vaddr, offset);
            uint32_t page_index =
                static_cast<uint32_t>(rec.offset / ctx_.cfg->page_size);

            wait_ = Wait::Data;
            issued_at_ = ctx_.now();
            ctx_.engine->request_issued();
            if (rec.op == TraceOp::Read) {
                ctx_.engine->post_message(make_message(
                    self_, pte.module, ReadReqBody{rh.region_id, page_index, offset, self_}));
            } else {
                uint8_t value = write_value(current_task_uid(), record_index_);
                ctx_.engine->post_message(make_message(
                    self_, pte.module,
                    WriteReqBody{rh.region_id, page_index, offset, value, self_}));
            }
            break;
        }
        case TraceOp::Free: {
            auto hit = handles_.find(rec.handle);
            assert(hit != handles_.end());
            wait_ = Wait::Free;
            freeing_region_ = hit->second.region_id;
            ctx_.engine->request_issued();
            send_free(hit->second.region_id);
            break;
        }
        case TraceOp::End: {
            ctx_.engine->note_task_complete();
            // unfreed regions stay allocated; handles recycle per task
            for (const auto& [handle, rh] : handles_)
                leaked_.push_back(LeakedRegion{rh.region_id, current_task_uid(), handle});
            handles_.clear();
            ++task_index_;
            record_index_ = 0;
            if (task_index_ < tasks_.size()) {
                ctx_.engine->schedule_trace_step(
                    self_, ctx_.now() + tasks_[task_index_].trace->records[0].delta);
            } else {
                drained_ = true;
                ctx_.engine->cpu_drained();
            }
            break;
        }
    }
}

void CpuAgent::advance() {
    wait_ = Wait::None;
    ++record_index_;
    assert(record_index_ < tasks_[task_index_].trace->records.size());
    ctx_.engine->schedule_trace_step(self_, ctx_.now() + current_record().delta);
}

void CpuAgent::send_alloc_probe() {
    assert(alloc_probe_ < alloc_ring_.size());
    NodeRef module = ctx_.mesh->node(alloc_ring_[alloc_probe_]);
    ctx_.engine->post_message(make_message(self_, module, AllocReqBody{pending_alloc_}));
}

void CpuAgent::send_free(RegionId region_id) {
    ctx_.engine->post_message(
        make_message(self_, module_of(region_id), FreeReqBody{region_id, self_}));
}

void CpuAgent::on_message(const Message& m) {
    switch (m.kind) {
        case MsgKind::AllocResp: handle_alloc_resp(m); break;
        case MsgKind::ReadResp:
        case MsgKind::WriteAck: handle_data_resp(m); break;
        case MsgKind::FreeAck: handle_free_ack(m); break;
        case MsgKind::Status: merge_status(std::get<StatusBody>(m.body)); break;
        case MsgKind::Propose: handle_propose(m); break;
        case MsgKind::Commit: break;  // table update carries the state change
        case MsgKind::Abort: break;
        case MsgKind::TableUpdate: handle_table_update(m); break;
        default:
            throw SimError("cpu " + to_string(self_) + " received unexpected " +
                           to_string(m.kind));
    }
}

void CpuAgent::on_timer(const TimerTag& tag) {
    if (std::holds_alternative<EmissionTick>(tag)) {
        handle_emission_tick();
    } else if (const FreeRetry* fr = std::get_if<FreeRetry>(&tag)) {
        assert(wait_ == Wait::Free && freeing_region_ == fr->region_id);
        send_free(fr->region_id);
    }
}

void CpuAgent::handle_alloc_resp(const Message& m) {
    assert(wait_ == Wait::Alloc);
    const auto& resp = std::get<AllocRespBody>(m.body);
    assert(resp.region_id == pending_alloc_.region_id);
    if (!resp.granted) {
        ++alloc_probe_;
        if (alloc_probe_ >= alloc_ring_.size())
            throw SimError("out of memory: no module can host " +
                           std::to_string(pending_alloc_.n_pages) + " pages for " +
                           to_string(self_));
        send_alloc_probe();
        return;
    }
    assert(resp.frames.size() == pending_alloc_.n_pages);
    const RegionHandle& rh = handles_.at(pending_alloc_handle_);
    for (uint32_t i = 0; i < rh.n_pages; ++i) {
        page_table_[rh.vpage_base + i] =
            PageTableEntry{m.src, resp.frames[i], rh.region_id};
    }
    ctx_.engine->request_completed();
    advance();
}

void CpuAgent::handle_data_resp(const Message& m) {
    assert(wait_ == Wait::Data);
    if (m.kind == MsgKind::ReadResp && ctx_.oracle) {
        ctx_.oracle->reads[current_task_uid()].push_back(
            std::get<ReadRespBody>(m.body).value);
    }
    RunMetrics& metrics = ctx_.metrics();
    metrics.n_accesses += 1;
    metrics.sum_access_rt += ctx_.now() - issued_at_;
    ctx_.engine->request_completed();
    advance();
}

void CpuAgent::handle_free_ack(const Message& m) {
    assert(wait_ == Wait::Free);
    const auto& ack = std::get<FreeAckBody>(m.body);
    if (!ack.granted) {
        if (ack.deny_reason != "locked")
            throw SimError("free of region " + std::to_string(ack.region_id) + " failed: " +
                           ack.deny_reason);
        // migration in flight; retry against the (possibly new) host
        ctx_.engine->set_timer(self_, FreeRetry{ack.region_id},
                               ctx_.now() + ctx_.cfg->free_retry_delay);
        return;
    }
    const RegionHandle rh = regions_.at(ack.region_id);
    for (uint32_t i = 0; i < rh.n_pages; ++i) page_table_.erase(rh.vpage_base + i);
    handles_.erase(rh.handle);
    regions_.erase(ack.region_id);
    freeing_region_.reset();
    ctx_.engine->request_completed();
    advance();
}

// Owner-side vote: the region must still be live, not mid-free, and for
// locality propositions the target must still be closer than the source.
void CpuAgent::handle_propose(const Message& m) {
    const Proposition& p = std::get<ProposeBody>(m.body).proposition;
    VoteBody vote;
    vote.proposition_id = p.proposition_id;

    auto it = regions_.find(p.region_id);
    if (it == regions_.end() || (freeing_region_ && *freeing_region_ == p.region_id)) {
        vote.accept = false;
        vote.reason = RejectReason::RegionBusy;
    } else if (module_of(p.region_id) != p.source) {
        vote.accept = false;
        vote.reason = RejectReason::RegionBusy;
    } else if (p.kind == OptimizerKind::Locality &&
               hop_distance(self_.coord, p.target.coord) >=
                   hop_distance(self_.coord, p.source.coord)) {
        vote.accept = false;
        vote.reason = RejectReason::StaleBenefit;
    } else {
        vote.accept = true;
    }
    if (ctx_.hooks && ctx_.hooks->withhold_vote && ctx_.hooks->withhold_vote(self_, p)) return;
    ctx_.engine->post_message(make_message(self_, p.source, std::move(vote)));
}

void CpuAgent::handle_table_update(const Message& m) {
    const auto& upd = std::get<TableUpdateBody>(m.body);
    if (applied_updates_.contains(upd.proposition_id)) return;  // idempotent, single ack
    applied_updates_.insert(upd.proposition_id);

    auto it = regions_.find(upd.region_id);
    if (it == regions_.end())
        throw SimError("table update for unknown region " + std::to_string(upd.region_id));
    const RegionHandle& rh = it->second;
    assert(upd.new_frames.size() == rh.n_pages);
    // atomic repoint: vpages unchanged, module and frames replaced
    for (uint32_t i = 0; i < rh.n_pages; ++i) {
        PageTableEntry& pte = page_table_.at(rh.vpage_base + i);
        pte.module = upd.new_module;
        pte.frame = upd.new_frames[i];
    }
    ctx_.engine->post_message(
        make_message(self_, m.src, TableUpdateAckBody{upd.proposition_id}));
}

}  // namespace samsim
