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

#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "samsim/experiment.hpp"
#include "samsim/report.hpp"
#include "samsim/rng.hpp"
#include "samsim/util.hpp"

namespace fs = std::filesystem;
using namespace samsim;

namespace {

// Generator spec: `page_size = N` plus one line per trace,
// `trace = <name> <n_phases> <pages_per_phase> <accesses_per_phase>
//          <write_ratio> <mean_delta>`.
int cmd_gen_traces(const std::string& spec_path, const std::string& out_dir,
                   uint64_t seed) {
    std::ifstream in(spec_path);
    if (!in) throw ConfigError("cannot open spec file '" + spec_path + "'");

    uint64_t page_size = 4096;
    std::vector<TraceSpec> specs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string text = strip_comment(line);
        if (text.empty()) continue;
        auto [key, value] = split_key_value(text);
        if (key == "page_size") {
            page_size = std::stoull(value);
        } else if (key == "trace") {
            std::vector<std::string> f = split_ws(value);
            if (f.size() != 6)
                throw ConfigError(spec_path + ":" + std::to_string(lineno) +
                                  ": trace expects '<name> <n_phases> <pages_per_phase>"
                                  " <accesses_per_phase> <write_ratio> <mean_delta>'");
            TraceSpec ts;
            ts.name = f[0];
            ts.n_phases = static_cast<uint32_t>(std::stoul(f[1]));
            ts.pages_per_phase = static_cast<uint32_t>(std::stoul(f[2]));
            ts.accesses_per_phase = static_cast<uint32_t>(std::stoul(f[3]));
            ts.write_ratio = std::stod(f[4]);
            ts.mean_delta = std::stod(f[5]);
            specs.push_back(ts);
        } else {
            throw ConfigError(spec_path + ":" + std::to_string(lineno) +
                              ": unknown key '" + key + "'");
        }
    }
    if (specs.empty()) throw ConfigError("spec file defines no traces");

    fs::create_directories(out_dir);
    for (size_t i = 0; i < specs.size(); ++i) {
        std::string path = out_dir + "/" + specs[i].name + ".trace";
        generate_trace_file(specs[i], page_size, mix64(seed, i), path);
        std::cout << path << "\n";
    }
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& traces_dir,
                 const std::string& opt, const std::string& csv_path,
                 const std::string& log_path) {
    SimConfig cfg = load_config_file(config_path);
    if (!traces_dir.empty()) cfg.traces_dir = traces_dir;

    TracePool pool = load_trace_pool(cfg);
    Mesh mesh = cfg.build_mesh();
    Scenario scenario = build_scenario(cfg, mesh, pool);

    std::ofstream log;
    SimOptions opts;
    if (!log_path.empty()) {
        log.open(log_path, std::ios::binary);
        if (!log) throw ConfigError("cannot write log file '" + log_path + "'");
        opts.event_log = &log;
    }
    bool optimizer_on = opt == "on";
    opts.optimizer_enabled = optimizer_on;
    if (!optimizer_on) opts.monitoring_enabled = cfg.baseline_monitoring;

    RunMetrics m = run_simulation(cfg, scenario, opts);

    SweepPoint p = point_from_config(cfg);
    PairMetrics pair;
    (optimizer_on ? pair.on : pair.off) = m;
    std::string row = csv_row(cfg, p, pair, "ok");
    // single run: blank out the other makespan and the ee column
    {
        std::vector<std::string> fields;
        std::string field;
        std::istringstream rs(row);
        while (std::getline(rs, field, ',')) fields.push_back(field);
        fields[optimizer_on ? 10 : 9] = "";
        fields[11] = "";
        if (!optimizer_on) {
            // counters describe the run that actually happened
            fields[12] = std::to_string(m.n_propositions);
            fields[13] = std::to_string(m.n_committed);
            fields[14] = std::to_string(m.n_aborted);
            fields[15] = std::to_string(m.msgs_status());
            fields[16] = std::to_string(m.msgs_vote_round());
            fields[17] = std::to_string(m.msgs_migration());
            fields[18] = std::to_string(m.n_accesses);
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.2f", m.mean_access_rt());
            fields[19] = buf;
        }
        row.clear();
        for (size_t i = 0; i < fields.size(); ++i) {
            if (i) row += ',';
            row += fields[i];
        }
    }

    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw ConfigError("cannot write CSV file '" + csv_path + "'");
    csv << kCsvHeader << "\n" << row << "\n";

    std::cout << "makespan " << m.makespan << " propositions " << m.n_propositions
              << " committed " << m.n_committed << " aborted " << m.n_aborted << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& grid_path,
              const std::string& csv_path, int jobs, const std::string& traces_dir) {
    SimConfig cfg = load_config_file(config_path);
    if (!traces_dir.empty()) cfg.traces_dir = traces_dir;
    // relative traces_dir resolves against the config file
    if (!fs::path(cfg.traces_dir).is_absolute()) {
        fs::path base = fs::path(config_path).parent_path();
        cfg.traces_dir = (base / cfg.traces_dir).string();
    }

    TracePool pool = load_trace_pool(cfg);
    std::vector<SweepPoint> grid = load_grid_file(grid_path, cfg);
    std::string csv = sweep(cfg, pool, grid, jobs);

    std::ofstream out(csv_path, std::ios::binary);
    if (!out) throw ConfigError("cannot write CSV file '" + csv_path + "'");
    out << csv;
    std::cout << grid.size() << " points -> " << csv_path << "\n";
    return 0;
}

int cmd_report(const std::string& csv_path, const std::string& out_dir) {
    std::vector<std::string> files = render_report_file(csv_path, out_dir);
    for (const std::string& f : files) std::cout << f << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decentralized self-optimizing memory simulator"};
    app.require_subcommand(1);

    std::string spec_path, out_dir, config_path, traces_dir, csv_path, log_path, grid_path;
    std::string opt = "on";
    uint64_t seed = 42;
    int jobs = 1;

    auto* gen = app.add_subcommand("gen-traces", "Generate synthetic trace files");
    gen->add_option("--spec", spec_path, "Generator spec file")->required();
    gen->add_option("--out", out_dir, "Output directory")->required();
    gen->add_option("--seed", seed, "Generator seed");

    auto* sim = app.add_subcommand("simulate", "Run one simulation");
    sim->add_option("--config", config_path, "Config file")->required();
    sim->add_option("--traces", traces_dir, "Trace directory (overrides config)");
    sim->add_option("--opt", opt, "Optimizer on|off")->check(CLI::IsMember({"on", "off"}));
    sim->add_option("--csv", csv_path, "Metrics CSV output")->required();
    sim->add_option("--log", log_path, "Event log output");

    auto* sw = app.add_subcommand("sweep", "Run a parameter sweep of paired runs");
    sw->add_option("--config", config_path, "Config file")->required();
    sw->add_option("--grid", grid_path, "Grid file")->required();
    sw->add_option("--csv", csv_path, "CSV output")->required();
    sw->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
    sw->add_option("--traces", traces_dir, "Trace directory (overrides config)");

    auto* rep = app.add_subcommand("report", "Render charts from a sweep CSV");
    rep->add_option("--csv", csv_path, "Sweep CSV")->required();
    rep->add_option("--out", out_dir, "Chart output directory")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) return cmd_gen_traces(spec_path, out_dir, seed);
        if (sim->parsed()) return cmd_simulate(config_path, traces_dir, opt, csv_path, log_path);
        if (sw->parsed()) return cmd_sweep(config_path, grid_path, csv_path, jobs, traces_dir);
        if (rep->parsed()) return cmd_report(csv_path, out_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
