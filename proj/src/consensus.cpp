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

#include "samsim/consensus.hpp"

namespace samsim {

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::NoSpace: return "NoSpace";
        case RejectReason::Overloaded: return "Overloaded";
        case RejectReason::StaleBenefit: return "StaleBenefit";
        case RejectReason::RegionBusy: return "RegionBusy";
    }
    return "?";
}

std::optional<bool> decide(const VoteState& vs, bool timed_out) {
    if (vs.phase != VotePhase::Voting) return std::nullopt;
    if (vs.any_rejected()) return false;
    if (vs.all_cast()) return vs.all_accepted();
    if (timed_out) return false;
    return std::nullopt;
}

}  // namespace samsim
