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
#include <string>
#include <vector>

#include "samsim/geometry.hpp"

namespace samsim {

enum class OptimizerKind : uint8_t { Off, Locality, Balance };

std::string to_string(OptimizerKind k);
OptimizerKind optimizer_kind_from_string(const std::string& s);

// Everything a single simulation run needs. Parsed from line-oriented
// `key = value` text; '#' starts a comment.
struct SimConfig {
    // mesh / placement
    int mesh_width = 6;
    int mesh_height = 6;
    std::vector<std::string> placement_rows;  // empty -> checkerboard

    LatencyModel latency;

    // memory geometry
    uint64_t page_size = 4096;
    uint32_t frames_per_module = 64;

    // self-optimization parameters
    uint64_t threshold = 45;
    Cycles emission_period = 1000;
    Cycles monitoring_cycle_period = 5000;
    int radius = 2;
    OptimizerKind optimizer = OptimizerKind::Locality;
    double cost_factor = 1.0;
    double balance_threshold = 0.8;
    uint32_t counter_capacity = 16;
    Cycles vote_timeout = 0;  // 0 -> 10 x worst-case round-trip

    // scenario
    uint64_t seed = 42;
    uint32_t n_tasks = 8;
    std::vector<std::string> task_pool;
    std::string traces_dir = ".";
    double prefill_fraction = 0.5;
    Cycles prefill_release_span = 40000;

    // plumbing
    Cycles free_retry_delay = 100;
    Cycles max_cycles = 200'000'000;
    bool baseline_monitoring = true;  // monitoring stays on in the off run

    Mesh build_mesh() const;
    Cycles effective_vote_timeout() const;
    void validate() const;
};

SimConfig parse_config(std::istream& in, const std::string& origin = "<config>");
SimConfig load_config_file(const std::string& path);

}  // namespace samsim
