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

#include "samsim/monitoring.hpp"

namespace samsim {

bool KnowledgeBase::merge(const StatusRecord& rec) {
    auto it = records_.find(rec.node);
    if (it == records_.end()) {
        records_.emplace(rec.node, rec);
        return true;
    }
    if (rec.observed_at > it->second.observed_at) {
        it->second = rec;
        return true;
    }
    return false;
}

const StatusRecord* KnowledgeBase::find(const NodeRef& node) const {
    auto it = records_.find(node);
    return it == records_.end() ? nullptr : &it->second;
}

std::vector<StatusRecord> KnowledgeBase::fresh_records(Cycles now, Cycles max_age) const {
    std::vector<StatusRecord> out;
    for (const auto& [node, rec] : records_) {
        if (now - rec.observed_at <= max_age) out.push_back(rec);
    }
    return out;
}

std::optional<TriggerFired> AssociativeCounterArray::bump(RegionId key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
        if (entries_.size() >= capacity_) {
            // evict min count, oldest insertion on ties
            auto victim = entries_.begin();
            for (auto e = entries_.begin(); e != entries_.end(); ++e) {
                if (e->second.count < victim->second.count ||
                    (e->second.count == victim->second.count &&
                     e->second.inserted_seq < victim->second.inserted_seq))
                    victim = e;
            }
            entries_.erase(victim);
        }
        it = entries_.emplace(key, Entry{0, insert_seq_++}).first;
    }
    ++it->second.count;
    if (it->second.count >= threshold_ && !fired_.contains(key)) {
        fired_.insert(key);
        return TriggerFired{key, it->second.count};
    }
    return std::nullopt;
}

void AssociativeCounterArray::reset() {
    entries_.clear();
    fired_.clear();
}

void AssociativeCounterArray::purge(RegionId key) {
    entries_.erase(key);
    fired_.erase(key);
}

uint64_t AssociativeCounterArray::count(RegionId key) const {
    auto it = entries_.find(key);
    return it == entries_.end() ? 0 : it->second.count;
}

std::optional<TriggerFired> AssociativeCounterArray::hottest() const {
    std::optional<TriggerFired> best;
    for (const auto& [key, entry] : entries_) {
        if (!best || entry.count > best->count) best = TriggerFired{key, entry.count};
    }
    return best;
}

}  // namespace samsim
