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

#include <doctest.h>

#include <sstream>

#include "samsim/simulation.hpp"

using namespace samsim;

namespace {

Trace trace_from(const std::string& body) {
    std::istringstream in("SAMTRACE v1 t\n" + body);
    return parse_trace(in, 4096);
}

SimConfig quiet_config() {
    SimConfig cfg;
    cfg.mesh_width = 2;
    cfg.mesh_height = 2;
    cfg.optimizer = OptimizerKind::Off;
    cfg.emission_period = 1000000;  // keep gossip out of these tests
    cfg.monitoring_cycle_period = 1000000;
    cfg.frames_per_module = 8;
    return cfg;
}

Scenario single_task(const Trace& t, TileCoord cpu, uint64_t uid = 77) {
    Scenario sc;
    sc.schedule[cpu].push_back(TaskInstance{&t, uid});
    return sc;
}

}  // namespace

TEST_CASE("expanding ring: nearest module grants on an empty board") {
    SimConfig cfg = quiet_config();
    Trace t = trace_from("0 A 1 2\n0 F 1\n0 E\n");
    Scenario sc = single_task(t, {0, 0});
    Simulation sim(cfg, sc, {});
    sim.engine().run_until(30);  // past the grant, before the free
    // ring order from (0,0): (1,0) then (0,1)
    CHECK(sim.memory_agent({1, 0}).records().size() == 1);
    CHECK(sim.memory_agent({0, 1}).records().empty());
    sim.run();
}

TEST_CASE("expanding ring: next-nearest grants when the nearest is full") {
    SimConfig cfg = quiet_config();
    Trace t = trace_from("0 A 1 2\n0 R 1 0\n0 F 1\n0 E\n");
    Scenario sc = single_task(t, {0, 0});
    PrefillChunk block;
    block.module = {1, 0};
    block.region_id = (1ULL << 63);
    block.n_frames = 7;  // leaves 1 free, request needs 2
    sc.prefill.push_back(block);

    Simulation sim(cfg, sc, {});
    RunMetrics m = sim.run();
    CHECK(m.makespan > 0);
    CHECK(sim.memory_agent({0, 1}).records().empty());  // freed at the end
    CHECK(m.msgs(MsgKind::AllocReq) == 2);  // one denial, one grant
}

TEST_CASE("total demand beyond capacity is out of memory") {
    SimConfig cfg = quiet_config();
    Trace t = trace_from("0 A 1 20\n0 F 1\n0 E\n");  // 20 pages > 2x8 frames
    Scenario sc = single_task(t, {0, 0});
    Simulation sim(cfg, sc, {});
    CHECK_THROWS_WITH_AS(sim.run(), doctest::Contains("out of memory"), SimError);
}

TEST_CASE("translate maps vaddr to module, frame and offset") {
    SimConfig cfg = quiet_config();
    Trace t = trace_from("0 A 1 4\n0 W 1 12293\n0 F 1\n0 E\n");  // page 3, offset 5
    Scenario sc = single_task(t, {0, 0});
    Simulation sim(cfg, sc, {});
    sim.engine().run_until(30);

    CpuAgent& cpu = sim.cpu_agent({0, 0});
    uint64_t offset = 0;
    PageTableEntry pte = cpu.translate(3 * 4096 + 5, offset);
    CHECK(pte.module == sim.mesh().node({1, 0}));
    CHECK(pte.frame == 3);
    CHECK(offset == 5);

    CHECK_THROWS_AS(cpu.translate(100 * 4096, offset), SimError);  // page fault
    sim.run();
}

TEST_CASE("delta semantics: records issue delta cycles after the response") {
    SimConfig cfg = quiet_config();
    // closed-form makespan on the 2x2 board, region on module (1,0), d=1:
    //   alloc rt, then each access delta + rt + service, free rt, final E delta
    Trace t = trace_from("0 A 1 1\n7 R 1 0\n100 W 1 0\n0 F 1\n3 E\n");
    Scenario sc = single_task(t, {0, 0});
    Simulation sim(cfg, sc, {});
    RunMetrics m = sim.run();

    const LatencyModel& lm = cfg.latency;
    Cycles hop_rt = 2 * lm.message_latency({0, 0}, {1, 0}, kHeaderBytes);
    // the grant carries the frame list: 16 B header + 4 B per frame
    Cycles alloc_rt = lm.message_latency({0, 0}, {1, 0}, kHeaderBytes) +
                      lm.message_latency({1, 0}, {0, 0}, kHeaderBytes + 4);
    Cycles access_rt = hop_rt + lm.mem_service_cycles;
    Cycles expected = alloc_rt               // alloc
                      + 7 + access_rt        // read
                      + 100 + access_rt      // write
                      + 0 + hop_rt           // free
                      + 3;                   // E
    CHECK(m.makespan == expected);
    CHECK(m.n_accesses == 2);
    CHECK(m.sum_access_rt == 2 * access_rt);
}

TEST_CASE("a trace of n uncontended accesses has closed-form makespan") {
    SimConfig cfg = quiet_config();
    std::ostringstream body;
    body << "0 A 1 2\n";
    Cycles sum_deltas = 0;
    const int n = 25;
    for (int i = 0; i < n; ++i) {
        Cycles delta = (i * 7) % 13;
        sum_deltas += delta;
        body << delta << (i % 2 ? " R 1 " : " W 1 ") << (i * 97) % 8192 << "\n";
    }
    body << "2 F 1\n1 E\n";
    Trace t = trace_from(body.str());
    Scenario sc = single_task(t, {0, 0});
    Simulation sim(cfg, sc, {});
    RunMetrics m = sim.run();

    const LatencyModel& lm = cfg.latency;
    Cycles hop_rt = 2 * lm.message_latency({0, 0}, {1, 0}, kHeaderBytes);
    Cycles alloc_rt = lm.message_latency({0, 0}, {1, 0}, kHeaderBytes) +
                      lm.message_latency({1, 0}, {0, 0}, kHeaderBytes + 4 * 2);
    Cycles access_rt = hop_rt + lm.mem_service_cycles;
    CHECK(m.makespan == alloc_rt + sum_deltas + n * access_rt + 2 + hop_rt + 1);
    CHECK(m.n_accesses == n);
}

TEST_CASE("two tasks run back to back; handles recycle") {
    SimConfig cfg = quiet_config();
    Trace t1 = trace_from("0 A 1 1\n0 W 1 0\n0 E\n");  // leaks its region
    Trace t2 = trace_from("0 A 1 2\n0 R 1 0\n0 F 1\n0 E\n");
    Scenario sc;
    sc.schedule[{0, 0}] = {TaskInstance{&t1, 11}, TaskInstance{&t2, 22}};
    Simulation sim(cfg, sc, {});
    RunMetrics m = sim.run();
    CHECK(m.makespan > 0);

    CpuAgent& cpu = sim.cpu_agent({0, 0});
    REQUIRE(cpu.leaked_regions().size() == 1);
    CHECK(cpu.leaked_regions()[0].task_uid == 11);
    CHECK(cpu.leaked_regions()[0].handle == 1);
    CHECK(cpu.live_handles().empty());
    // the leaked region still occupies its module
    CHECK(sim.memory_agent({1, 0}).frames_in_records() == 1);
}

TEST_CASE("duplicate table update is idempotent with a single ack") {
    SimConfig cfg = quiet_config();
    Trace t = trace_from("0 A 1 2\n0 W 1 0\n0 E\n");
    Scenario sc = single_task(t, {0, 0});
    Simulation sim(cfg, sc, {});
    sim.run();

    CpuAgent& cpu = sim.cpu_agent({0, 0});
    RegionId region = cpu.leaked_regions()[0].region_id;
    NodeRef old_module = sim.mesh().node({1, 0});
    NodeRef new_module = sim.mesh().node({0, 1});

    TableUpdateBody upd;
    upd.proposition_id = 555;
    upd.region_id = region;
    upd.new_module = new_module;
    upd.new_frames = {4, 5};
    uint64_t acks_before = sim.metrics().msgs(MsgKind::TableUpdateAck);
    cpu.on_message(make_message(old_module, sim.mesh().node({0, 0}), upd));
    CHECK(sim.metrics().msgs(MsgKind::TableUpdateAck) == acks_before + 1);
    CHECK(cpu.region_module(region) == new_module);
    uint64_t offset = 0;
    CHECK(cpu.translate(0, offset).frame == 4);

    // same proposition delivered again: no state change, no second ack
    cpu.on_message(make_message(old_module, sim.mesh().node({0, 0}), upd));
    CHECK(sim.metrics().msgs(MsgKind::TableUpdateAck) == acks_before + 1);
    CHECK(cpu.region_module(region) == new_module);
}
