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

#include "samsim/experiment.hpp"

#include <atomic>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "samsim/util.hpp"

namespace samsim {

SweepPoint point_from_config(const SimConfig& cfg) {
    SweepPoint p;
    p.threshold = cfg.threshold;
    p.emission_period = cfg.emission_period;
    p.monitoring_cycle_period = cfg.monitoring_cycle_period;
    p.radius = cfg.radius;
    p.optimizer = cfg.optimizer;
    p.cost_factor = cfg.cost_factor;
    p.seed = cfg.seed;
    return p;
}

SimConfig apply_point(const SimConfig& base, const SweepPoint& p) {
    SimConfig cfg = base;
    cfg.threshold = p.threshold;
    cfg.emission_period = p.emission_period;
    cfg.monitoring_cycle_period = p.monitoring_cycle_period;
    cfg.radius = p.radius;
    cfg.optimizer = p.optimizer;
    cfg.cost_factor = p.cost_factor;
    cfg.seed = p.seed;
    return cfg;
}

PairMetrics run_pair(const SimConfig& cfg, const TracePool& pool) {
    Mesh mesh = cfg.build_mesh();
    Scenario scenario = build_scenario(cfg, mesh, pool);

    PairMetrics pair;
    {
        SimOptions on;
        on.optimizer_enabled = true;
        pair.on = run_simulation(cfg, scenario, on);
    }
    {
        SimOptions off;
        off.optimizer_enabled = false;
        off.monitoring_enabled = cfg.baseline_monitoring;
        pair.off = run_simulation(cfg, scenario, off);
    }
    return pair;
}

int64_t economic_efficiency(const PairMetrics& pair) {
    return static_cast<int64_t>(pair.off.makespan) - static_cast<int64_t>(pair.on.makespan);
}

namespace {

std::string format_double(double v, const char* fmt) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), fmt, v);
    return buf;
}

std::string sanitize_status(std::string s) {
    for (char& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

}  // namespace

std::vector<SweepPoint> parse_grid(std::istream& in, const SimConfig& base) {
    SweepPoint defaults = point_from_config(base);
    std::vector<uint64_t> thresholds{defaults.threshold};
    std::vector<Cycles> emissions{defaults.emission_period};
    std::vector<Cycles> monitors{defaults.monitoring_cycle_period};
    std::vector<int> radii{defaults.radius};
    std::vector<OptimizerKind> optimizers{defaults.optimizer};
    std::vector<double> cost_factors{defaults.cost_factor};
    std::vector<uint64_t> seeds{defaults.seed};

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = strip_comment(line);
        if (text.empty()) continue;
        auto [key, value] = split_key_value(text);
        std::vector<std::string> items = split_list(value);
        if (key.empty() || items.empty())
            throw ConfigError("grid:" + std::to_string(lineno) +
                              ": expected 'key = v1,v2,...'");
        try {
            if (key == "threshold") {
                thresholds.clear();
                for (const auto& s : items) thresholds.push_back(std::stoull(s));
            } else if (key == "emission_period") {
                emissions.clear();
                for (const auto& s : items) emissions.push_back(std::stoull(s));
            } else if (key == "monitoring_cycle_period") {
                monitors.clear();
                for (const auto& s : items) monitors.push_back(std::stoull(s));
            } else if (key == "radius") {
                radii.clear();
                for (const auto& s : items) radii.push_back(std::stoi(s));
            } else if (key == "optimizer") {
                optimizers.clear();
                for (const auto& s : items) optimizers.push_back(optimizer_kind_from_string(s));
            } else if (key == "cost_factor") {
                cost_factors.clear();
                for (const auto& s : items) cost_factors.push_back(std::stod(s));
            } else if (key == "seed") {
                seeds.clear();
                for (const auto& s : items) seeds.push_back(std::stoull(s));
            } else {
                throw ConfigError("grid:" + std::to_string(lineno) + ": unknown key '" +
                                  key + "'");
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("grid:" + std::to_string(lineno) + ": bad value list '" +
                              value + "'");
        }
    }

    std::vector<SweepPoint> grid;
    for (uint64_t t : thresholds)
        for (Cycles e : emissions)
            for (Cycles m : monitors)
                for (int r : radii)
                    for (OptimizerKind o : optimizers)
                        for (double c : cost_factors)
                            for (uint64_t s : seeds)
                                grid.push_back(SweepPoint{t, e, m, r, o, c, s});
    if (grid.empty()) throw ConfigError("grid is empty");
    return grid;
}

std::vector<SweepPoint> load_grid_file(const std::string& path, const SimConfig& base) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open grid file '" + path + "'");
    return parse_grid(in, base);
}

std::string csv_row(const SimConfig& cfg, const SweepPoint& p, const PairMetrics& pair,
                    const std::string& status) {
    std::ostringstream row;
    row << p.seed << ',' << cfg.mesh_width << ',' << cfg.mesh_height << ','
        << p.threshold << ',' << p.emission_period << ',' << p.monitoring_cycle_period
        << ',' << p.radius << ',' << to_string(p.optimizer) << ','
        << format_double(p.cost_factor, "%g") << ',' << pair.on.makespan << ','
        << pair.off.makespan << ',' << economic_efficiency(pair) << ','
        << pair.on.n_propositions << ',' << pair.on.n_committed << ','
        << pair.on.n_aborted << ',' << pair.on.msgs_status() << ','
        << pair.on.msgs_vote_round() << ',' << pair.on.msgs_migration() << ','
        << pair.on.n_accesses << ',' << format_double(pair.on.mean_access_rt(), "%.2f")
        << ',' << sanitize_status(status);
    return row.str();
}

std::string sweep(const SimConfig& base, const TracePool& pool,
                  const std::vector<SweepPoint>& grid, int jobs) {
    if (grid.empty()) throw ConfigError("grid is empty");
    std::vector<std::string> rows(grid.size());

    auto run_point = [&](size_t i) {
        SimConfig cfg = apply_point(base, grid[i]);
        try {
            cfg.validate();
            PairMetrics pair = run_pair(cfg, pool);
            rows[i] = csv_row(cfg, grid[i], pair, "ok");
        } catch (const std::exception& e) {
            rows[i] = csv_row(cfg, grid[i], PairMetrics{}, std::string("error: ") + e.what());
        }
    };

    if (jobs <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) run_point(i);
    } else {
        std::atomic<size_t> next{0};
        auto worker = [&] {
            for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1))
                run_point(i);
        };
        std::vector<std::thread> threads;
        int n = std::min<int>(jobs, static_cast<int>(grid.size()));
        threads.reserve(n);
        for (int t = 0; t < n; ++t) threads.emplace_back(worker);
        for (std::thread& t : threads) t.join();
    }

    std::ostringstream csv;
    csv << kCsvHeader << '\n';
    for (const std::string& row : rows) csv << row << '\n';
    return csv.str();
}

}  // namespace samsim
