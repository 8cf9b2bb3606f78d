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

#include <iosfwd>

#include "samsim/simulation.hpp"

namespace samsim {

struct SweepPoint {
    uint64_t threshold = 45;
    Cycles emission_period = 1000;
    Cycles monitoring_cycle_period = 5000;
    int radius = 1;
    OptimizerKind optimizer = OptimizerKind::Locality;
    double cost_factor = 1.0;
    uint64_t seed = 42;

    friend bool operator==(const SweepPoint&, const SweepPoint&) = default;
};

SweepPoint point_from_config(const SimConfig& cfg);
SimConfig apply_point(const SimConfig& base, const SweepPoint& p);

struct PairMetrics {
    RunMetrics on;
    RunMetrics off;
};

// Two full runs over the identical scenario: optimizer on, then optimizer
// decisions disabled (monitoring stays on unless cfg.baseline_monitoring is
// off), isolating the optimization benefit from the monitoring overhead.
PairMetrics run_pair(const SimConfig& cfg, const TracePool& pool);

// off.makespan - on.makespan; positive means the optimization overhead
// amortized.
int64_t economic_efficiency(const PairMetrics& pair);

// Grid file: `key = v1,v2,...` for the seven sweep keys; absent keys take
// the base config's value. Row order is the cartesian product in field
// order, last axis fastest.
std::vector<SweepPoint> parse_grid(std::istream& in, const SimConfig& base);
std::vector<SweepPoint> load_grid_file(const std::string& path, const SimConfig& base);

inline constexpr const char* kCsvHeader =
    "seed,mesh_w,mesh_h,threshold,emission_period,monitor_period,radius,optimizer,"
    "cost_factor,makespan_on,makespan_off,ee_cycles,n_propositions,n_committed,"
    "n_aborted,msgs_status,msgs_vote_round,msgs_migration,n_accesses,mean_rt_cycles,"
    "status";

std::string csv_row(const SimConfig& cfg, const SweepPoint& p, const PairMetrics& pair,
                    const std::string& status);

// Runs every point (jobs > 1: worker threads, no shared mutable state) and
// returns the CSV; rows follow grid order regardless of completion order.
// A failed point keeps its row with the error in the status column.
std::string sweep(const SimConfig& base, const TracePool& pool,
                  const std::vector<SweepPoint>& grid, int jobs = 1);

}  // namespace samsim
