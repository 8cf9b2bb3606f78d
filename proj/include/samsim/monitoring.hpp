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
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "samsim/geometry.hpp"

namespace samsim {

using RegionId = uint64_t;

// One node's self-reported state at a point in (its own) time.
struct StatusRecord {
    NodeRef node;
    uint32_t free_frames = 0;
    double utilization = 0.0;  // busy fraction over the last window, [0,1]
    Cycles observed_at = 0;

    friend bool operator==(const StatusRecord&, const StatusRecord&) = default;
};

// 16 bytes/record on the wire: one default flit per record.
inline constexpr uint64_t kStatusRecordBytes = 16;

// Freshest-wins store of other nodes' status records. Grows step by step as
// gossip arrives; never reset during a run.
class KnowledgeBase {
public:
    // Adopts iff the node is unknown or the record is strictly newer.
    // Returns true when adopted.
    bool merge(const StatusRecord& rec);

    const StatusRecord* find(const NodeRef& node) const;
    size_t size() const { return records_.size(); }

    // Records young enough to piggyback on an outgoing status message.
    std::vector<StatusRecord> fresh_records(Cycles now, Cycles max_age) const;
    // Candidate iteration in deterministic (y, x, role) order.
    const std::map<NodeRef, StatusRecord>& records() const { return records_; }

private:
    std::map<NodeRef, StatusRecord> records_;
};

struct TriggerFired {
    RegionId key = 0;
    uint64_t count = 0;
};

// Bounded hot-key counter set. A count crossing the threshold fires once per
// key per monitoring cycle; when full, the smallest count (oldest insertion
// on ties) is evicted.
class AssociativeCounterArray {
public:
    AssociativeCounterArray(uint32_t capacity, uint64_t threshold)
        : capacity_(capacity), threshold_(threshold) {}

    std::optional<TriggerFired> bump(RegionId key);
    void reset();
    void purge(RegionId key);  // region freed or migrated away

    uint64_t count(RegionId key) const;
    size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    uint64_t threshold() const { return threshold_; }

    // Hottest entry (max count, smallest key on ties); nullopt when empty.
    std::optional<TriggerFired> hottest() const;

private:
    struct Entry {
        uint64_t count = 0;
        uint64_t inserted_seq = 0;
    };

    uint32_t capacity_;
    uint64_t threshold_;
    uint64_t insert_seq_ = 0;
    std::map<RegionId, Entry> entries_;
    std::set<RegionId> fired_;  // cleared only by reset
};

}  // namespace samsim
