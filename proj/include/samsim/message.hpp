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
#include <string>
#include <variant>
#include <vector>

#include "samsim/consensus.hpp"
#include "samsim/monitoring.hpp"
#include "samsim/wire.hpp"

namespace samsim {

enum class MsgKind : uint8_t {
    AllocReq, AllocResp, ReadReq, ReadResp, WriteReq, WriteAck,
    FreeReq, FreeAck, Status, Propose, Vote, Commit, Abort,
    MigrateData, MigrateAck, TableUpdate, TableUpdateAck,
};
inline constexpr size_t kMsgKindCount = 17;

std::string to_string(MsgKind k);

struct AllocReqBody {
    NodeRef owner;
    RegionId region_id = 0;
    uint32_t n_pages = 0;
    uint64_t vpage_base = 0;
};
struct AllocRespBody {
    RegionId region_id = 0;
    bool granted = false;
    std::vector<uint32_t> frames;
    uint32_t free_count = 0;        // on denial
    std::string deny_reason;
};
struct ReadReqBody {
    RegionId region_id = 0;
    uint32_t page_index = 0;
    uint64_t offset = 0;            // within the page
    NodeRef requester;
};
struct ReadRespBody {
    RegionId region_id = 0;
    uint8_t value = 0;
};
struct WriteReqBody {
    RegionId region_id = 0;
    uint32_t page_index = 0;
    uint64_t offset = 0;
    uint8_t value = 0;
    NodeRef requester;
};
struct WriteAckBody {
    RegionId region_id = 0;
};
struct FreeReqBody {
    RegionId region_id = 0;
    NodeRef requester;
};
struct FreeAckBody {
    RegionId region_id = 0;
    bool granted = false;           // false -> region locked, retry later
    std::string deny_reason;
};
struct StatusBody {
    std::vector<StatusRecord> records;
};
struct ProposeBody {
    Proposition proposition;
};
struct VoteBody {
    PropositionId proposition_id = 0;
    bool accept = false;
    RejectReason reason = RejectReason::NoSpace;
    std::vector<uint32_t> reserved_frames;  // target's tentative reservation
};
struct CommitBody {
    PropositionId proposition_id = 0;
};
struct AbortBody {
    PropositionId proposition_id = 0;
};
struct MigrateDataBody {
    PropositionId proposition_id = 0;
    Proposition proposition;
    std::vector<uint8_t> bytes;     // n_pages * page_size
};
struct MigrateAckBody {
    PropositionId proposition_id = 0;
};
struct TableUpdateBody {
    PropositionId proposition_id = 0;
    RegionId region_id = 0;
    NodeRef new_module;
    std::vector<uint32_t> new_frames;
};
struct TableUpdateAckBody {
    PropositionId proposition_id = 0;
};

using MessageBody = std::variant<
    AllocReqBody, AllocRespBody, ReadReqBody, ReadRespBody, WriteReqBody,
    WriteAckBody, FreeReqBody, FreeAckBody, StatusBody, ProposeBody,
    VoteBody, CommitBody, AbortBody, MigrateDataBody, MigrateAckBody,
    TableUpdateBody, TableUpdateAckBody>;

struct Message {
    MsgKind kind = MsgKind::AllocReq;
    NodeRef src;
    NodeRef dst;
    uint64_t payload_bytes = kHeaderBytes;
    MessageBody body;
};

Message make_message(NodeRef src, NodeRef dst, MessageBody body);

// Vote/Commit/Abort are delivered before data messages at equal times.
inline bool is_control_kind(MsgKind k) {
    return k == MsgKind::Vote || k == MsgKind::Commit || k == MsgKind::Abort;
}

std::string summarize(const Message& m);  // for the event log

}  // namespace samsim
