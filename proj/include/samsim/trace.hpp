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
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "samsim/geometry.hpp"

namespace samsim {

struct TraceFormatError : std::runtime_error {
    TraceFormatError(const std::string& what, int line)
        : std::runtime_error(what + " (line " + std::to_string(line) + ")"), line(line) {}
    int line;
};

enum class TraceOp : uint8_t { Alloc, Read, Write, Free, End };

struct TraceRecord {
    Cycles delta = 0;      // local compute before issuing
    TraceOp op = TraceOp::End;
    uint32_t handle = 0;   // A/R/W/F
    uint32_t n_pages = 0;  // A
    uint64_t offset = 0;   // R/W, bytes within the region

    friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

struct Trace {
    std::string name;
    std::vector<TraceRecord> records;  // ends with exactly one End

    friend bool operator==(const Trace&, const Trace&) = default;
};

struct TraceSpec {
    std::string name;
    uint32_t n_phases = 1;
    uint32_t pages_per_phase = 1;
    uint32_t accesses_per_phase = 1;
    double write_ratio = 0.5;
    double mean_delta = 10.0;
};

// Text form, fully determined by (spec, page_size, seed).
std::string generate_trace_text(const TraceSpec& spec, uint64_t page_size, uint64_t seed);
void generate_trace_file(const TraceSpec& spec, uint64_t page_size, uint64_t seed,
                         const std::string& path);

// Header `SAMTRACE v1 <name>`, '#' comments, whitespace-separated decimal
// fields. Handle discipline and offset bounds are checked statically.
Trace parse_trace(std::istream& in, uint64_t page_size);
Trace load_trace_file(const std::string& path, uint64_t page_size);

// Deterministic value written by the W record at `record_index` of the task
// instance `task_uid`; also used by the reference machine.
uint8_t write_value(uint64_t task_uid, size_t record_index);

}  // namespace samsim
