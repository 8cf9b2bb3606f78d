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

#include <array>
#include <cstdint>

#include "samsim/message.hpp"

namespace samsim {

struct RunMetrics {
    Cycles makespan = 0;

    uint64_t n_propositions = 0;
    uint64_t n_committed = 0;       // executed optimizations
    uint64_t n_aborted = 0;         // votes started but aborted
    uint64_t n_dropped_by_lock = 0; // propositions dropped before voting

    std::array<uint64_t, kMsgKindCount> msgs_by_kind{};

    uint64_t n_accesses = 0;        // completed reads + writes
    uint64_t sum_access_rt = 0;     // issue -> response, includes queueing

    uint64_t msgs(MsgKind k) const { return msgs_by_kind[static_cast<size_t>(k)]; }
    uint64_t& msgs(MsgKind k) { return msgs_by_kind[static_cast<size_t>(k)]; }

    uint64_t msgs_status() const { return msgs(MsgKind::Status); }
    uint64_t msgs_vote_round() const {
        return msgs(MsgKind::Propose) + msgs(MsgKind::Vote) + msgs(MsgKind::Commit) +
               msgs(MsgKind::Abort);
    }
    uint64_t msgs_migration() const {
        return msgs(MsgKind::MigrateData) + msgs(MsgKind::MigrateAck) +
               msgs(MsgKind::TableUpdate) + msgs(MsgKind::TableUpdateAck);
    }
    double mean_access_rt() const {
        return n_accesses == 0 ? 0.0
                               : static_cast<double>(sum_access_rt) /
                                     static_cast<double>(n_accesses);
    }

    friend bool operator==(const RunMetrics&, const RunMetrics&) = default;
};

}  // namespace samsim
