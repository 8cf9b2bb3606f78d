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

#include "samsim/config.hpp"

#include <fstream>
#include <sstream>

#include "samsim/util.hpp"

namespace samsim {

std::string to_string(OptimizerKind k) {
    switch (k) {
        case OptimizerKind::Off: return "off";
        case OptimizerKind::Locality: return "locality";
        case OptimizerKind::Balance: return "balance";
    }
    return "?";
}

OptimizerKind optimizer_kind_from_string(const std::string& s) {
    if (s == "off") return OptimizerKind::Off;
    if (s == "locality") return OptimizerKind::Locality;
    if (s == "balance") return OptimizerKind::Balance;
    throw ConfigError("unknown optimizer '" + s + "' (expected locality|balance|off)");
}

Mesh SimConfig::build_mesh() const {
    if (!placement_rows.empty()) return Mesh::from_rows(placement_rows);
    return Mesh::checkerboard(mesh_width, mesh_height);
}

Cycles SimConfig::effective_vote_timeout() const {
    if (vote_timeout > 0) return vote_timeout;
    Cycles max_hops = static_cast<Cycles>(mesh_width - 1 + mesh_height - 1);
    Cycles one_way = latency.base_cycles + latency.per_hop_cycles * max_hops +
                     latency.per_flit_cycles;
    return 10 * 2 * one_way;
}

void SimConfig::validate() const {
    latency.validate();
    if (page_size == 0) throw ConfigError("page_size must be positive");
    if (frames_per_module == 0) throw ConfigError("frames_per_module must be positive");
    if (threshold == 0) throw ConfigError("threshold must be positive");
    if (emission_period == 0) throw ConfigError("emission_period must be positive");
    if (monitoring_cycle_period == 0) throw ConfigError("monitoring_cycle_period must be positive");
    if (radius != 1 && radius != 2) throw ConfigError("radius must be 1 or 2");
    if (counter_capacity == 0) throw ConfigError("counter_capacity must be positive");
    if (cost_factor < 0.0) throw ConfigError("cost_factor must be non-negative");
    if (prefill_fraction < 0.0 || prefill_fraction > 1.0)
        throw ConfigError("infeasible pre-fill: prefill_fraction must be in [0,1]");
    if (balance_threshold <= 0.0 || balance_threshold > 1.0)
        throw ConfigError("balance_threshold must be in (0,1]");
    build_mesh();  // throws on a bad placement
}

namespace {

uint64_t parse_u64(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        uint64_t n = std::stoull(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return n;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected integer, got '" + v + "'");
    }
}

double parse_f64(const std::string& key, const std::string& v) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("key '" + key + "': expected number, got '" + v + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("key '" + key + "': expected on|off, got '" + v + "'");
}

}  // namespace

SimConfig parse_config(std::istream& in, const std::string& origin) {
    SimConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = strip_comment(line);
        if (text.empty()) continue;
        auto [key, value] = split_key_value(text);
        if (key.empty() || value.empty())
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");

        if (key == "mesh_width") cfg.mesh_width = static_cast<int>(parse_u64(key, value));
        else if (key == "mesh_height") cfg.mesh_height = static_cast<int>(parse_u64(key, value));
        else if (key == "placement_row") cfg.placement_rows.push_back(value);
        else if (key == "base_cycles") cfg.latency.base_cycles = parse_u64(key, value);
        else if (key == "per_hop_cycles") cfg.latency.per_hop_cycles = parse_u64(key, value);
        else if (key == "per_flit_cycles") cfg.latency.per_flit_cycles = parse_u64(key, value);
        else if (key == "flit_bytes") cfg.latency.flit_bytes = parse_u64(key, value);
        else if (key == "mem_service_cycles") cfg.latency.mem_service_cycles = parse_u64(key, value);
        else if (key == "page_size") cfg.page_size = parse_u64(key, value);
        else if (key == "frames_per_module") cfg.frames_per_module = static_cast<uint32_t>(parse_u64(key, value));
        else if (key == "threshold") cfg.threshold = parse_u64(key, value);
        else if (key == "emission_period") cfg.emission_period = parse_u64(key, value);
        else if (key == "monitoring_cycle_period") cfg.monitoring_cycle_period = parse_u64(key, value);
        else if (key == "radius") cfg.radius = static_cast<int>(parse_u64(key, value));
        else if (key == "optimizer") cfg.optimizer = optimizer_kind_from_string(value);
        else if (key == "cost_factor") cfg.cost_factor = parse_f64(key, value);
        else if (key == "balance_threshold") cfg.balance_threshold = parse_f64(key, value);
        else if (key == "counter_capacity") cfg.counter_capacity = static_cast<uint32_t>(parse_u64(key, value));
        else if (key == "vote_timeout") cfg.vote_timeout = parse_u64(key, value);
        else if (key == "seed") cfg.seed = parse_u64(key, value);
        else if (key == "n_tasks") cfg.n_tasks = static_cast<uint32_t>(parse_u64(key, value));
        else if (key == "task_pool") cfg.task_pool = split_list(value);
        else if (key == "traces_dir") cfg.traces_dir = value;
        else if (key == "prefill_fraction") cfg.prefill_fraction = parse_f64(key, value);
        else if (key == "prefill_release_span") cfg.prefill_release_span = parse_u64(key, value);
        else if (key == "free_retry_delay") cfg.free_retry_delay = parse_u64(key, value);
        else if (key == "max_cycles") cfg.max_cycles = parse_u64(key, value);
        else if (key == "baseline_monitoring") cfg.baseline_monitoring = parse_bool(key, value);
        else
            throw ConfigError(origin + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
    }
    cfg.validate();
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config(in, path);
}

}  // namespace samsim
