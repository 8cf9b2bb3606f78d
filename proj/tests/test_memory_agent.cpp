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

#include <memory>

#include "samsim/memory_agent.hpp"
#include "samsim/rng.hpp"
#include "samsim/simulation.hpp"

using namespace samsim;

namespace {

struct Collector : Agent {
    Engine* engine = nullptr;
    std::vector<std::pair<Cycles, Message>> received;
    void on_message(const Message& m) override { received.emplace_back(engine->now(), m); }
    void on_timer(const TimerTag&) override {}

    const Message& last() const { return received.back().second; }
};

// A memory module at (1,0) on a 2x2 board, driven directly; a collector at
// (0,0) catches the replies.
struct ModuleHarness {
    SimConfig cfg;
    Mesh mesh;
    RunMetrics metrics;
    Engine engine;
    SimContext ctx;
    Collector cpu;
    NodeRef cpu_node;
    NodeRef mem_node;
    std::unique_ptr<MemoryAgent> mem;

    explicit ModuleHarness(uint32_t frames = 4) : mesh(Mesh::checkerboard(2, 2)),
                                                  engine(mesh, cfg.latency, metrics) {
        cfg.frames_per_module = frames;
        cfg.threshold = 1000;  // keep the optimizer quiet unless a test wants it
        ctx.cfg = &cfg;
        ctx.mesh = &mesh;
        ctx.engine = &engine;
        ctx.optimizer_enabled = false;
        cpu.engine = &engine;
        cpu_node = mesh.node({0, 0});
        mem_node = mesh.node({1, 0});
        mem = std::make_unique<MemoryAgent>(ctx, mem_node);
        engine.register_agent({0, 0}, &cpu);
        engine.register_agent({1, 0}, mem.get());
        engine.register_agent({0, 1}, &cpu);
        engine.register_agent({1, 1}, &cpu);
    }

    AllocRespBody alloc(RegionId region, uint32_t n_pages, uint64_t vpage_base = 0) {
        mem->on_message(make_message(cpu_node, mem_node,
                                     AllocReqBody{cpu_node, region, n_pages, vpage_base}));
        engine.run_until(engine.now() + 100);
        return std::get<AllocRespBody>(cpu.last().body);
    }
    FreeAckBody free_region(RegionId region) {
        mem->on_message(make_message(cpu_node, mem_node, FreeReqBody{region, cpu_node}));
        engine.run_until(engine.now() + 100);
        return std::get<FreeAckBody>(cpu.last().body);
    }
};

}  // namespace

TEST_CASE("alloc grants lowest frames first") {
    ModuleHarness h(4);
    AllocRespBody r = h.alloc(1, 3);
    CHECK(r.granted);
    CHECK(r.frames == std::vector<uint32_t>{0, 1, 2});
    CHECK(h.mem->free_frames() == 1);
}

TEST_CASE("alloc denies when short on frames") {
    ModuleHarness h(4);
    h.alloc(1, 2);
    AllocRespBody r = h.alloc(2, 3);
    CHECK_FALSE(r.granted);
    CHECK(r.free_count == 2);
    CHECK(h.mem->records().size() == 1);
}

TEST_CASE("alloc rejects a duplicate region id") {
    ModuleHarness h(4);
    h.alloc(1, 1);
    AllocRespBody r = h.alloc(1, 1);
    CHECK_FALSE(r.granted);
    CHECK(r.deny_reason == "duplicate region id");
}

TEST_CASE("free restores the free list; replay grants the same frames") {
    ModuleHarness h(4);
    AllocRespBody first = h.alloc(1, 3);
    FreeAckBody ack = h.free_region(1);
    CHECK(ack.granted);
    CHECK(h.mem->free_frames() == 4);
    AllocRespBody second = h.alloc(2, 3);
    CHECK(second.frames == first.frames);
}

TEST_CASE("free of an unknown region is denied") {
    ModuleHarness h(4);
    FreeAckBody ack = h.free_region(99);
    CHECK_FALSE(ack.granted);
    CHECK(ack.deny_reason == "unknown");
}

TEST_CASE("write then read returns the stored byte") {
    ModuleHarness h(4);
    h.alloc(1, 2);
    h.mem->on_message(make_message(h.cpu_node, h.mem_node,
                                   WriteReqBody{1, 0, 4, 0xAB, h.cpu_node}));
    h.engine.run_until(h.engine.now() + 200);
    CHECK(std::get<WriteAckBody>(h.cpu.last().body).region_id == 1);

    h.mem->on_message(make_message(h.cpu_node, h.mem_node, ReadReqBody{1, 0, 4, h.cpu_node}));
    h.engine.run_until(h.engine.now() + 200);
    CHECK(std::get<ReadRespBody>(h.cpu.last().body).value == 0xAB);
}

TEST_CASE("fresh regions read as zero even after frame reuse") {
    ModuleHarness h(4);
    h.alloc(1, 1);
    h.mem->on_message(make_message(h.cpu_node, h.mem_node,
                                   WriteReqBody{1, 0, 0, 0xEE, h.cpu_node}));
    h.engine.run_until(h.engine.now() + 200);
    h.free_region(1);
    h.alloc(2, 1);  // recycles frame 0
    h.mem->on_message(make_message(h.cpu_node, h.mem_node, ReadReqBody{2, 0, 0, h.cpu_node}));
    h.engine.run_until(h.engine.now() + 200);
    CHECK(std::get<ReadRespBody>(h.cpu.last().body).value == 0);
}

TEST_CASE("FIFO service queue spaces concurrent requests by the service time") {
    ModuleHarness h(4);
    h.alloc(1, 1);
    h.cpu.received.clear();
    // two requests admitted in the same cycle
    h.mem->on_message(make_message(h.cpu_node, h.mem_node, ReadReqBody{1, 0, 0, h.cpu_node}));
    h.mem->on_message(make_message(h.cpu_node, h.mem_node, ReadReqBody{1, 0, 1, h.cpu_node}));
    h.engine.run_until(h.engine.now() + 500);
    REQUIRE(h.cpu.received.size() == 2);
    Cycles svc = h.cfg.latency.mem_service_cycles;
    CHECK(h.cpu.received[1].first - h.cpu.received[0].first == svc);
}

TEST_CASE("access by a non-owner aborts the run") {
    ModuleHarness h(4);
    h.alloc(1, 1);
    NodeRef stranger = h.mesh.node({1, 1});
    CHECK_THROWS_AS(
        h.mem->on_message(make_message(stranger, h.mem_node, ReadReqBody{1, 0, 0, stranger})),
        SimError);
}

TEST_CASE("access to an unknown region aborts the run") {
    ModuleHarness h(4);
    CHECK_THROWS_AS(
        h.mem->on_message(make_message(h.cpu_node, h.mem_node, ReadReqBody{7, 0, 0, h.cpu_node})),
        SimError);
}

TEST_CASE("monitoring boundary resets counters and the load window") {
    ModuleHarness h(4);
    h.cfg.threshold = 100;
    h.alloc(1, 1);
    for (int i = 0; i < 44; ++i)
        h.mem->on_message(make_message(h.cpu_node, h.mem_node, ReadReqBody{1, 0, 0, h.cpu_node}));
    CHECK(h.mem->counters().count(1) == 44);
    h.mem->on_timer(TimerTag{MonitorBoundary{}});
    CHECK(h.mem->counters().empty());
    CHECK(h.mem->counters().count(1) == 0);
    h.engine.run_until(h.engine.now() + 2000);  // drain queued services
}

TEST_CASE("boundary timer re-arms every monitoring cycle") {
    SimConfig cfg;
    cfg.placement_rows = {"CM"};
    cfg.mesh_width = 2;
    cfg.mesh_height = 1;
    cfg.monitoring_cycle_period = 5000;
    cfg.optimizer = OptimizerKind::Off;
    cfg.emission_period = 100000;  // quiet
    Scenario empty;
    Simulation sim(cfg, empty);
    sim.engine().run_until(10000);
    // after two boundaries the window restarted at 10000 exactly
    CHECK(sim.memory_agent({1, 0}).utilization_now() == 0.0);
    CHECK(sim.memory_agent({1, 0}).counters().empty());
}

TEST_CASE("frame conservation under random alloc/free traffic") {
    ModuleHarness h(16);
    Rng rng(4242);
    std::map<RegionId, bool> live;
    RegionId next = 1;
    for (int i = 0; i < 300; ++i) {
        if (live.empty() || rng.chance(0.6)) {
            uint32_t n = 1 + static_cast<uint32_t>(rng.below(5));
            if (h.alloc(next, n).granted) live[next] = true;
            ++next;
        } else {
            auto it = live.begin();
            std::advance(it, rng.below(live.size()));
            CHECK(h.free_region(it->first).granted);
            live.erase(it);
        }
        CHECK(h.mem->free_frames() + h.mem->reserved_frames() + h.mem->frames_in_records() ==
              h.mem->n_frames());
    }
}

TEST_CASE("pre-fill occupies frames and releases on schedule") {
    ModuleHarness h(8);
    PrefillChunk chunk;
    chunk.module = {1, 0};
    chunk.region_id = (1ULL << 63) + 1;
    chunk.n_frames = 6;
    chunk.release_at = 400;
    h.mem->install_prefill(chunk);
    CHECK(h.mem->free_frames() == 2);

    AllocRespBody r = h.alloc(1, 4);
    CHECK_FALSE(r.granted);  // only 2 free before the release

    h.engine.run_until(500);
    CHECK(h.mem->free_frames() == 8);  // chunk released; region 1 was denied
    AllocRespBody r2 = h.alloc(2, 4);
    CHECK(r2.granted);
}
