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
#include <string>

#include "samsim/optimizer.hpp"

namespace samsim {

enum class RejectReason : uint8_t { NoSpace, Overloaded, StaleBenefit, RegionBusy };

std::string to_string(RejectReason r);

enum class VoteChoice : uint8_t { Pending, Accept, Reject };

enum class VotePhase : uint8_t { Voting, Committing, Done, Aborted };

// Voting state kept by the proposer (the source module). Participants are
// the target module and the owning CPU; commit requires unanimity.
struct VoteState {
    Proposition proposition;
    std::map<NodeRef, VoteChoice> votes;
    VotePhase phase = VotePhase::Voting;
    Cycles started_at = 0;
    std::vector<uint32_t> target_frames;  // reserved at the target on Accept

    bool all_accepted() const {
        for (const auto& [node, v] : votes)
            if (v != VoteChoice::Accept) return false;
        return true;
    }
    bool any_rejected() const {
        for (const auto& [node, v] : votes)
            if (v == VoteChoice::Reject) return true;
        return false;
    }
    bool all_cast() const {
        for (const auto& [node, v] : votes)
            if (v == VoteChoice::Pending) return false;
        return true;
    }
};

// Unanimity once both votes are in; timeout or any reject aborts.
// nullopt = keep waiting.
std::optional<bool> decide(const VoteState& vs, bool timed_out);

}  // namespace samsim
