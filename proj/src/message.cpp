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

#include "samsim/message.hpp"

namespace samsim {

std::string to_string(MsgKind k) {
    switch (k) {
        case MsgKind::AllocReq: return "AllocReq";
        case MsgKind::AllocResp: return "AllocResp";
        case MsgKind::ReadReq: return "ReadReq";
        case MsgKind::ReadResp: return "ReadResp";
        case MsgKind::WriteReq: return "WriteReq";
        case MsgKind::WriteAck: return "WriteAck";
        case MsgKind::FreeReq: return "FreeReq";
        case MsgKind::FreeAck: return "FreeAck";
        case MsgKind::Status: return "Status";
        case MsgKind::Propose: return "Propose";
        case MsgKind::Vote: return "Vote";
        case MsgKind::Commit: return "Commit";
        case MsgKind::Abort: return "Abort";
        case MsgKind::MigrateData: return "MigrateData";
        case MsgKind::MigrateAck: return "MigrateAck";
        case MsgKind::TableUpdate: return "TableUpdate";
        case MsgKind::TableUpdateAck: return "TableUpdateAck";
    }
    return "?";
}

namespace {

struct KindAndSize {
    MsgKind kind;
    uint64_t payload_bytes;
};

struct BodyVisitor {
    KindAndSize operator()(const AllocReqBody&) const { return {MsgKind::AllocReq, kHeaderBytes}; }
    KindAndSize operator()(const AllocRespBody& b) const {
        return {MsgKind::AllocResp, kHeaderBytes + 4 * b.frames.size()};
    }
    KindAndSize operator()(const ReadReqBody&) const { return {MsgKind::ReadReq, kHeaderBytes}; }
    KindAndSize operator()(const ReadRespBody&) const { return {MsgKind::ReadResp, kHeaderBytes}; }
    KindAndSize operator()(const WriteReqBody&) const { return {MsgKind::WriteReq, kHeaderBytes}; }
    KindAndSize operator()(const WriteAckBody&) const { return {MsgKind::WriteAck, kHeaderBytes}; }
    KindAndSize operator()(const FreeReqBody&) const { return {MsgKind::FreeReq, kHeaderBytes}; }
    KindAndSize operator()(const FreeAckBody&) const { return {MsgKind::FreeAck, kHeaderBytes}; }
    KindAndSize operator()(const StatusBody& b) const {
        return {MsgKind::Status, kStatusRecordBytes * b.records.size()};
    }
    KindAndSize operator()(const ProposeBody&) const { return {MsgKind::Propose, kProposeBytes}; }
    KindAndSize operator()(const VoteBody&) const { return {MsgKind::Vote, kHeaderBytes}; }
    KindAndSize operator()(const CommitBody&) const { return {MsgKind::Commit, kHeaderBytes}; }
    KindAndSize operator()(const AbortBody&) const { return {MsgKind::Abort, kHeaderBytes}; }
    KindAndSize operator()(const MigrateDataBody& b) const {
        return {MsgKind::MigrateData, b.bytes.size()};
    }
    KindAndSize operator()(const MigrateAckBody&) const { return {MsgKind::MigrateAck, kHeaderBytes}; }
    KindAndSize operator()(const TableUpdateBody& b) const {
        return {MsgKind::TableUpdate, kTableUpdateBytes + 4 * b.new_frames.size()};
    }
    KindAndSize operator()(const TableUpdateAckBody&) const {
        return {MsgKind::TableUpdateAck, kHeaderBytes};
    }
};

}  // namespace

Message make_message(NodeRef src, NodeRef dst, MessageBody body) {
    Message m;
    KindAndSize ks = std::visit(BodyVisitor{}, body);
    m.kind = ks.kind;
    m.payload_bytes = ks.payload_bytes;
    m.src = src;
    m.dst = dst;
    m.body = std::move(body);
    return m;
}

std::string summarize(const Message& m) {
    switch (m.kind) {
        case MsgKind::AllocReq: {
            const auto& b = std::get<AllocReqBody>(m.body);
            return "region=" + std::to_string(b.region_id) + " pages=" + std::to_string(b.n_pages);
        }
        case MsgKind::AllocResp: {
            const auto& b = std::get<AllocRespBody>(m.body);
            return "region=" + std::to_string(b.region_id) + (b.granted ? " granted" : " denied");
        }
        case MsgKind::ReadReq: {
            const auto& b = std::get<ReadReqBody>(m.body);
            return "region=" + std::to_string(b.region_id) + " page=" + std::to_string(b.page_index) +
                   " off=" + std::to_string(b.offset);
        }
        case MsgKind::WriteReq: {
            const auto& b = std::get<WriteReqBody>(m.body);
            return "region=" + std::to_string(b.region_id) + " page=" + std::to_string(b.page_index) +
                   " off=" + std::to_string(b.offset);
        }
        case MsgKind::FreeReq:
            return "region=" + std::to_string(std::get<FreeReqBody>(m.body).region_id);
        case MsgKind::FreeAck: {
            const auto& b = std::get<FreeAckBody>(m.body);
            return "region=" + std::to_string(b.region_id) + (b.granted ? " granted" : " denied");
        }
        case MsgKind::Status:
            return "records=" + std::to_string(std::get<StatusBody>(m.body).records.size());
        case MsgKind::Propose: {
            const auto& p = std::get<ProposeBody>(m.body).proposition;
            return "prop=" + std::to_string(p.proposition_id) + " region=" +
                   std::to_string(p.region_id) + " " + to_string(p.source) + "->" +
                   to_string(p.target);
        }
        case MsgKind::Vote: {
            const auto& b = std::get<VoteBody>(m.body);
            return "prop=" + std::to_string(b.proposition_id) +
                   (b.accept ? " accept" : " reject " + to_string(b.reason));
        }
        case MsgKind::Commit:
            return "prop=" + std::to_string(std::get<CommitBody>(m.body).proposition_id);
        case MsgKind::Abort:
            return "prop=" + std::to_string(std::get<AbortBody>(m.body).proposition_id);
        case MsgKind::MigrateData: {
            const auto& b = std::get<MigrateDataBody>(m.body);
            return "prop=" + std::to_string(b.proposition_id) + " bytes=" +
                   std::to_string(b.bytes.size());
        }
        case MsgKind::MigrateAck:
            return "prop=" + std::to_string(std::get<MigrateAckBody>(m.body).proposition_id);
        case MsgKind::TableUpdate: {
            const auto& b = std::get<TableUpdateBody>(m.body);
            return "prop=" + std::to_string(b.proposition_id) + " region=" +
                   std::to_string(b.region_id) + " -> " + to_string(b.new_module);
        }
        case MsgKind::TableUpdateAck:
            return "prop=" + std::to_string(std::get<TableUpdateAckBody>(m.body).proposition_id);
        default:
            return "";
    }
}

}  // namespace samsim
