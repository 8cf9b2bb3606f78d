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

#include "samsim/memory_agent.hpp"

#include <cassert>

namespace samsim {

MemoryAgent::MemoryAgent(SimContext& ctx, NodeRef self)
    : GossipAgent(ctx, self),
      n_frames_(ctx.cfg->frames_per_module),
      page_size_(ctx.cfg->page_size),
      data_(static_cast<size_t>(ctx.cfg->frames_per_module) * ctx.cfg->page_size, 0),
      counters_(ctx.cfg->counter_capacity, ctx.cfg->threshold) {
    for (uint32_t f = 0; f < n_frames_; ++f) free_list_.insert(f);
}

uint32_t MemoryAgent::reserved_frames() const {
    uint32_t n = 0;
    for (const auto& [pid, frames] : reservations_) n += static_cast<uint32_t>(frames.size());
    return n;
}

double MemoryAgent::utilization_now() const {
    Cycles now = ctx_.now();
    if (now <= window_start_) return 0.0;
    double u = static_cast<double>(busy_in_window_) / static_cast<double>(now - window_start_);
    return u > 1.0 ? 1.0 : u;
}

StatusRecord MemoryAgent::own_status() const {
    return StatusRecord{self_, free_frames(), utilization_now(), ctx_.now()};
}

uint64_t MemoryAgent::frames_in_records() const {
    uint64_t n = 0;
    for (const auto& [id, rec] : records_) n += rec.frames.size();
    return n;
}

std::vector<uint8_t> MemoryAgent::region_bytes(RegionId id) const {
    auto it = records_.find(id);
    if (it == records_.end()) return {};
    std::vector<uint8_t> out;
    out.reserve(it->second.frames.size() * page_size_);
    for (uint32_t frame : it->second.frames) {
        const uint8_t* p = data_.data() + static_cast<size_t>(frame) * page_size_;
        out.insert(out.end(), p, p + page_size_);
    }
    return out;
}

uint8_t* MemoryAgent::frame_byte(uint32_t frame, uint64_t offset) {
    assert(frame < n_frames_ && offset < page_size_);
    return data_.data() + static_cast<size_t>(frame) * page_size_ + offset;
}

std::vector<uint32_t> MemoryAgent::take_free_frames(uint32_t n) {
    assert(free_list_.size() >= n);
    std::vector<uint32_t> frames;
    frames.reserve(n);
    for (uint32_t i = 0; i < n; ++i) {
        auto it = free_list_.begin();  // lowest index first
        frames.push_back(*it);
        free_list_.erase(it);
    }
    return frames;
}

void MemoryAgent::install_prefill(const PrefillChunk& chunk) {
    if (free_list_.size() < chunk.n_frames)
        throw ConfigError("infeasible pre-fill: module " + to_string(self_) + " is full");
    AllocationRecord rec;
    rec.region_id = chunk.region_id;
    rec.owner = self_;
    rec.frames = take_free_frames(chunk.n_frames);
    rec.env = true;
    records_.emplace(chunk.region_id, std::move(rec));
    if (chunk.release_at)
        ctx_.engine->set_timer(self_, PrefillRelease{chunk.region_id}, *chunk.release_at);
}

void MemoryAgent::prefill_release(RegionId region_id) {
    auto it = records_.find(region_id);
    assert(it != records_.end() && it->second.env);
    for (uint32_t f : it->second.frames) free_list_.insert(f);
    records_.erase(it);
}

void MemoryAgent::on_timer(const TimerTag& tag) {
    if (std::holds_alternative<EmissionTick>(tag)) {
        handle_emission_tick();
    } else if (std::holds_alternative<MonitorBoundary>(tag)) {
        monitoring_boundary();
    } else if (const ServiceDone* sd = std::get_if<ServiceDone>(&tag)) {
        service_done(sd->request);
    } else if (const VoteTimeout* vt = std::get_if<VoteTimeout>(&tag)) {
        vote_timeout(vt->proposition_id);
    } else if (const MigrateSend* ms = std::get_if<MigrateSend>(&tag)) {
        send_migrate_data(ms->proposition_id);
    } else if (const PrefillRelease* pr = std::get_if<PrefillRelease>(&tag)) {
        prefill_release(pr->region_id);
    }
}

void MemoryAgent::on_message(const Message& m) {
    switch (m.kind) {
        case MsgKind::AllocReq: handle_alloc(m); break;
        case MsgKind::ReadReq:
        case MsgKind::WriteReq: handle_access(m); break;
        case MsgKind::FreeReq: handle_free(m); break;
        case MsgKind::Status: handle_status(m); break;
        case MsgKind::Propose: handle_propose(m); break;
        case MsgKind::Vote: handle_vote(m); break;
        case MsgKind::Commit: handle_commit(m); break;
        case MsgKind::Abort: handle_abort(m); break;
        case MsgKind::MigrateData: handle_migrate_data(m); break;
        case MsgKind::MigrateAck: handle_migrate_ack(m); break;
        case MsgKind::TableUpdateAck: handle_table_update_ack(m); break;
        default:
            throw SimError("memory module " + to_string(self_) + " received unexpected " +
                           to_string(m.kind));
    }
}

void MemoryAgent::handle_status(const Message& m) {
    merge_status(std::get<StatusBody>(m.body));
}

void MemoryAgent::monitoring_boundary() {
    counters_.reset();
    window_start_ = ctx_.now();
    busy_in_window_ = 0;
    served_in_window_ = 0;
    ctx_.engine->set_timer(self_, MonitorBoundary{},
                           ctx_.now() + ctx_.cfg->monitoring_cycle_period);
}

// ---- allocation / free ----

void MemoryAgent::handle_alloc(const Message& m) {
    const auto& req = std::get<AllocReqBody>(m.body);
    AllocRespBody resp;
    resp.region_id = req.region_id;
    if (records_.contains(req.region_id)) {
        resp.granted = false;
        resp.free_count = free_frames();
        resp.deny_reason = "duplicate region id";
    } else if (free_list_.size() >= req.n_pages) {
        AllocationRecord rec;
        rec.region_id = req.region_id;
        rec.owner = req.owner;
        rec.vpage_base = req.vpage_base;
        rec.frames = take_free_frames(req.n_pages);
        // frames recycle; a fresh region reads as zero
        for (uint32_t f : rec.frames)
            std::fill_n(frame_byte(f, 0), page_size_, uint8_t{0});
        resp.granted = true;
        resp.frames = rec.frames;
        records_.emplace(req.region_id, std::move(rec));
    } else {
        resp.granted = false;
        resp.free_count = free_frames();
        resp.deny_reason = "insufficient space";
    }
    ctx_.engine->post_message(make_message(self_, m.src, std::move(resp)));
}

void MemoryAgent::handle_free(const Message& m) {
    const auto& req = std::get<FreeReqBody>(m.body);
    FreeAckBody resp;
    resp.region_id = req.region_id;
    auto it = records_.find(req.region_id);
    if (it == records_.end()) {
        resp.granted = false;
        resp.deny_reason = "unknown";
    } else if (it->second.locked) {
        resp.granted = false;
        resp.deny_reason = "locked";
    } else if (it->second.owner != req.requester) {
        throw SimError("free of region " + std::to_string(req.region_id) + " by non-owner " +
                       to_string(req.requester));
    } else {
        for (uint32_t f : it->second.frames) free_list_.insert(f);
        records_.erase(it);
        counters_.purge(req.region_id);
        resp.granted = true;
    }
    ctx_.engine->post_message(make_message(self_, m.src, std::move(resp)));
}

// ---- data access path ----

void MemoryAgent::handle_access(const Message& m) {
    RegionId region_id;
    NodeRef requester;
    if (m.kind == MsgKind::ReadReq) {
        const auto& b = std::get<ReadReqBody>(m.body);
        region_id = b.region_id;
        requester = b.requester;
    } else {
        const auto& b = std::get<WriteReqBody>(m.body);
        region_id = b.region_id;
        requester = b.requester;
    }

    auto it = records_.find(region_id);
    if (it == records_.end())
        throw SimError("access to unknown region " + std::to_string(region_id) + " at " +
                       to_string(self_));
    if (it->second.owner != requester)
        throw SimError("access denied: region " + std::to_string(region_id) +
                       " owned by " + to_string(it->second.owner) + ", requested by " +
                       to_string(requester));

    if (it->second.locked) {
        // served after the migration resolves; forwarded if the region moved
        pending_locked_[region_id].push_back(m);
        return;
    }

    std::optional<TriggerFired> trigger = counters_.bump(region_id);
    enqueue_service(m);
    if (trigger && ctx_.optimizer_enabled) on_counter_trigger(*trigger);
}

void MemoryAgent::enqueue_service(const Message& m) {
    Cycles start = std::max(ctx_.now(), busy_until_);
    busy_until_ = start + ctx_.cfg->latency.mem_service_cycles;
    ctx_.engine->set_timer(self_, ServiceDone{m}, busy_until_);
}

void MemoryAgent::service_done(const Message& request) {
    Cycles svc = ctx_.cfg->latency.mem_service_cycles;
    Cycles begun = ctx_.now() - svc;
    busy_in_window_ += ctx_.now() - std::max(begun, window_start_);
    ++served_in_window_;

    if (request.kind == MsgKind::ReadReq) {
        const auto& b = std::get<ReadReqBody>(request.body);
        auto it = records_.find(b.region_id);
        assert(it != records_.end() && b.page_index < it->second.frames.size());
        uint8_t value = *frame_byte(it->second.frames[b.page_index], b.offset);
        ctx_.engine->post_message(
            make_message(self_, b.requester, ReadRespBody{b.region_id, value}));
    } else {
        const auto& b = std::get<WriteReqBody>(request.body);
        auto it = records_.find(b.region_id);
        assert(it != records_.end() && b.page_index < it->second.frames.size());
        *frame_byte(it->second.frames[b.page_index], b.offset) = b.value;
        ctx_.engine->post_message(make_message(self_, b.requester, WriteAckBody{b.region_id}));
    }
}

// ---- optimization: trigger -> proposition -> vote ----

void MemoryAgent::on_counter_trigger(const TriggerFired& trigger) {
    if (ctx_.hooks && ctx_.hooks->on_trigger) ctx_.hooks->on_trigger(self_, trigger);
    ProposeContext pctx;
    pctx.latency = &ctx_.cfg->latency;
    pctx.page_size = page_size_;
    pctx.cost_factor = ctx_.cfg->cost_factor;
    pctx.balance_threshold = ctx_.cfg->balance_threshold;

    std::optional<Proposition> prop;
    if (ctx_.cfg->optimizer == OptimizerKind::Locality) {
        auto it = records_.find(trigger.key);
        if (it == records_.end() || it->second.env) return;
        RegionFacts facts{trigger.key, it->second.owner,
                          static_cast<uint32_t>(it->second.frames.size()),
                          it->second.vpage_base};
        prop = propose_locality(trigger, self_, facts, kb_, pctx);
    } else if (ctx_.cfg->optimizer == OptimizerKind::Balance) {
        std::optional<TriggerFired> hottest = counters_.hottest();
        if (!hottest) return;
        auto it = records_.find(hottest->key);
        if (it == records_.end() || it->second.env) return;
        RegionFacts facts{hottest->key, it->second.owner,
                          static_cast<uint32_t>(it->second.frames.size()),
                          it->second.vpage_base};
        prop = propose_balance(*hottest, self_, utilization_now(), facts, kb_, pctx);
    }
    if (!prop) return;

    ctx_.metrics().n_propositions += 1;
    if (ctx_.hooks && ctx_.hooks->on_proposition) ctx_.hooks->on_proposition(*prop);
    start_vote(std::move(*prop));
}

void MemoryAgent::start_vote(Proposition p) {
    auto it = records_.find(p.region_id);
    if (it == records_.end() || it->second.locked || it->second.env) {
        ctx_.metrics().n_dropped_by_lock += 1;
        return;
    }
    p.proposition_id =
        (static_cast<uint64_t>(ctx_.mesh->linear(self_.coord)) + 1) << 32 | next_prop_seq_++;
    it->second.locked = true;
    it->second.lock_prop = p.proposition_id;

    VoteState vs;
    vs.proposition = p;
    vs.votes[p.target] = VoteChoice::Pending;
    vs.votes[p.owner] = VoteChoice::Pending;
    vs.started_at = ctx_.now();
    votes_.emplace(p.proposition_id, std::move(vs));
    ctx_.engine->vote_opened();

    ctx_.engine->post_message(make_message(self_, p.target, ProposeBody{p}));
    ctx_.engine->post_message(make_message(self_, p.owner, ProposeBody{p}));
    ctx_.engine->set_timer(self_, VoteTimeout{p.proposition_id},
                           ctx_.now() + ctx_.cfg->effective_vote_timeout());
}

// As target: validate against live state and tentatively reserve on accept.
void MemoryAgent::handle_propose(const Message& m) {
    const Proposition& p = std::get<ProposeBody>(m.body).proposition;
    VoteBody vote;
    vote.proposition_id = p.proposition_id;
    if (free_list_.size() < p.n_pages) {
        vote.accept = false;
        vote.reason = RejectReason::NoSpace;
    } else if (utilization_now() >= ctx_.cfg->balance_threshold) {
        vote.accept = false;
        vote.reason = RejectReason::Overloaded;
    } else {
        vote.accept = true;
        std::vector<uint32_t> frames = take_free_frames(p.n_pages);
        vote.reserved_frames = frames;
        reservations_.emplace(p.proposition_id, std::move(frames));
    }
    if (ctx_.hooks && ctx_.hooks->withhold_vote && ctx_.hooks->withhold_vote(self_, p)) return;
    ctx_.engine->post_message(make_message(self_, p.source, std::move(vote)));
}

void MemoryAgent::handle_vote(const Message& m) {
    const auto& v = std::get<VoteBody>(m.body);
    auto it = votes_.find(v.proposition_id);
    if (it == votes_.end() || it->second.phase != VotePhase::Voting) return;  // stale
    it->second.votes[m.src] = v.accept ? VoteChoice::Accept : VoteChoice::Reject;
    if (v.accept && m.src == it->second.proposition.target)
        it->second.target_frames = v.reserved_frames;

    std::optional<bool> verdict = decide(it->second, false);
    if (!verdict) return;
    if (*verdict) {
        it->second.phase = VotePhase::Committing;
        const Proposition& p = it->second.proposition;
        ctx_.engine->post_message(make_message(self_, p.target, CommitBody{p.proposition_id}));
        ctx_.engine->post_message(make_message(self_, p.owner, CommitBody{p.proposition_id}));
        // the data copy waits for requests already admitted to the service queue
        ctx_.engine->set_timer(self_, MigrateSend{p.proposition_id},
                               std::max(ctx_.now(), busy_until_));
    } else {
        finish_vote(v.proposition_id, false);
    }
}

void MemoryAgent::vote_timeout(PropositionId pid) {
    auto it = votes_.find(pid);
    if (it == votes_.end() || it->second.phase != VotePhase::Voting) return;  // resolved
    finish_vote(pid, false);
}

// Abort path (commits finish in handle_table_update_ack).
void MemoryAgent::finish_vote(PropositionId pid, bool committed) {
    assert(!committed);
    auto it = votes_.find(pid);
    assert(it != votes_.end());
    const Proposition& p = it->second.proposition;
    ctx_.engine->post_message(make_message(self_, p.target, AbortBody{pid}));
    ctx_.engine->post_message(make_message(self_, p.owner, AbortBody{pid}));

    auto rec = records_.find(p.region_id);
    assert(rec != records_.end() && rec->second.locked && rec->second.lock_prop == pid);
    rec->second.locked = false;
    rec->second.lock_prop = 0;
    it->second.phase = VotePhase::Aborted;
    ctx_.metrics().n_aborted += 1;
    ctx_.engine->vote_closed();
    votes_.erase(it);

    // serve whatever queued behind the lock
    auto pending = pending_locked_.find(p.region_id);
    if (pending != pending_locked_.end()) {
        for (const Message& queued : pending->second) {
            std::optional<TriggerFired> trigger = counters_.bump(p.region_id);
            enqueue_service(queued);
            if (trigger && ctx_.optimizer_enabled) on_counter_trigger(*trigger);
        }
        pending_locked_.erase(pending);
    }
}

void MemoryAgent::handle_commit(const Message& m) {
    // target side: reservation stands until MigrateData arrives
    (void)std::get<CommitBody>(m.body);
}

void MemoryAgent::handle_abort(const Message& m) {
    release_reservation(std::get<AbortBody>(m.body).proposition_id);
}

void MemoryAgent::release_reservation(PropositionId pid) {
    auto it = reservations_.find(pid);
    if (it == reservations_.end()) return;
    for (uint32_t f : it->second) free_list_.insert(f);
    reservations_.erase(it);
}

// ---- migration execution ----

void MemoryAgent::send_migrate_data(PropositionId pid) {
    auto it = votes_.find(pid);
    assert(it != votes_.end() && it->second.phase == VotePhase::Committing);
    const Proposition& p = it->second.proposition;

    MigrateDataBody body;
    body.proposition_id = pid;
    body.proposition = p;
    body.bytes = region_bytes(p.region_id);
    ctx_.engine->post_message(make_message(self_, p.target, std::move(body)));
}

// As target: install the bytes into the reserved frames.
void MemoryAgent::handle_migrate_data(const Message& m) {
    const auto& b = std::get<MigrateDataBody>(m.body);
    const Proposition& p = b.proposition;
    auto res = reservations_.find(b.proposition_id);
    assert(res != reservations_.end());

    AllocationRecord rec;
    rec.region_id = p.region_id;
    rec.owner = p.owner;
    rec.vpage_base = p.vpage_base;
    rec.frames = std::move(res->second);
    reservations_.erase(res);
    assert(b.bytes.size() == rec.frames.size() * page_size_);
    for (size_t i = 0; i < rec.frames.size(); ++i) {
        uint8_t* dst = frame_byte(rec.frames[i], 0);
        std::copy_n(b.bytes.data() + i * page_size_, page_size_, dst);
    }
    records_.emplace(p.region_id, std::move(rec));
    ctx_.engine->post_message(make_message(self_, p.source, MigrateAckBody{b.proposition_id}));
}

void MemoryAgent::handle_migrate_ack(const Message& m) {
    const auto& b = std::get<MigrateAckBody>(m.body);
    auto it = votes_.find(b.proposition_id);
    assert(it != votes_.end() && it->second.phase == VotePhase::Committing);
    const Proposition& p = it->second.proposition;

    TableUpdateBody upd;
    upd.proposition_id = b.proposition_id;
    upd.region_id = p.region_id;
    upd.new_module = p.target;
    upd.new_frames = it->second.target_frames;
    ctx_.engine->post_message(make_message(self_, p.owner, std::move(upd)));
}

// Owner repointed its table: release the frames here, hand queued accesses
// to the new host, unlock.
void MemoryAgent::handle_table_update_ack(const Message& m) {
    const auto& b = std::get<TableUpdateAckBody>(m.body);
    auto it = votes_.find(b.proposition_id);
    assert(it != votes_.end() && it->second.phase == VotePhase::Committing);
    Proposition p = it->second.proposition;

    auto rec = records_.find(p.region_id);
    assert(rec != records_.end() && rec->second.locked && rec->second.lock_prop == b.proposition_id);
    for (uint32_t f : rec->second.frames) free_list_.insert(f);
    records_.erase(rec);
    counters_.purge(p.region_id);

    auto pending = pending_locked_.find(p.region_id);
    if (pending != pending_locked_.end()) {
        for (Message& queued : pending->second) {
            queued.src = self_;
            queued.dst = p.target;
            ctx_.engine->post_message(std::move(queued));
        }
        pending_locked_.erase(pending);
    }

    it->second.phase = VotePhase::Done;
    ctx_.metrics().n_committed += 1;
    ctx_.engine->vote_closed();
    votes_.erase(it);

    if (ctx_.hooks && ctx_.hooks->on_commit) {
        CommitInfo info;
        info.proposition = p;
        info.pre_distance = hop_distance(p.owner.coord, p.source.coord);
        info.post_distance = hop_distance(p.owner.coord, p.target.coord);
        ctx_.hooks->on_commit(info);
    }
}

}  // namespace samsim
