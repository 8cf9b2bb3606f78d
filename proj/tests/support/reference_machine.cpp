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

#include "support/reference_machine.hpp"

#include <map>

namespace samsim::testing {

OracleCapture reference_replay(const Scenario& scenario, uint64_t page_size) {
    OracleCapture out;
    for (const auto& [cpu, tasks] : scenario.schedule) {
        for (const TaskInstance& task : tasks) {
            std::map<uint32_t, std::vector<uint8_t>> regions;  // handle -> bytes
            const std::vector<TraceRecord>& records = task.trace->records;
            for (size_t i = 0; i < records.size(); ++i) {
                const TraceRecord& rec = records[i];
                switch (rec.op) {
                    case TraceOp::Alloc:
                        regions.emplace(rec.handle,
                                        std::vector<uint8_t>(rec.n_pages * page_size, 0));
                        break;
                    case TraceOp::Read:
                        out.reads[task.task_uid].push_back(regions.at(rec.handle)[rec.offset]);
                        break;
                    case TraceOp::Write:
                        regions.at(rec.handle)[rec.offset] = write_value(task.task_uid, i);
                        break;
                    case TraceOp::Free:
                        regions.erase(rec.handle);
                        break;
                    case TraceOp::End:
                        for (auto& [handle, bytes] : regions)
                            out.final_regions[{task.task_uid, handle}] = std::move(bytes);
                        regions.clear();
                        break;
                }
            }
        }
    }
    return out;
}

}  // namespace samsim::testing
