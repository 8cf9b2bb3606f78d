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

#include <algorithm>

#include "samsim/geometry.hpp"
#include "samsim/rng.hpp"
#include "samsim/wire.hpp"

using namespace samsim;

namespace {

// independent enumeration of the clipped Manhattan ball
std::vector<TileCoord> brute_force_ball(const Mesh& mesh, TileCoord c, int radius) {
    std::vector<TileCoord> out;
    for (int y = 0; y < mesh.height(); ++y) {
        for (int x = 0; x < mesh.width(); ++x) {
            int d = std::abs(x - c.x) + std::abs(y - c.y);
            if (d >= 1 && d <= radius) out.push_back(TileCoord{x, y});
        }
    }
    return out;
}

}  // namespace

TEST_CASE("hop_distance basics") {
    CHECK(hop_distance({0, 0}, {0, 0}) == 0);
    CHECK(hop_distance({0, 0}, {2, 3}) == 5);

    // corner-to-corner on a 6x6 mesh: brute-force max over all pairs
    int max_d = 0;
    for (int y1 = 0; y1 < 6; ++y1)
        for (int x1 = 0; x1 < 6; ++x1)
            for (int y2 = 0; y2 < 6; ++y2)
                for (int x2 = 0; x2 < 6; ++x2)
                    max_d = std::max(max_d, std::abs(x1 - x2) + std::abs(y1 - y2));
    CHECK(max_d == 10);
    CHECK(hop_distance({0, 0}, {5, 5}) == max_d);
}

TEST_CASE("hop_distance is a metric") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        TileCoord a{static_cast<int>(rng.below(12)), static_cast<int>(rng.below(12))};
        TileCoord b{static_cast<int>(rng.below(12)), static_cast<int>(rng.below(12))};
        TileCoord c{static_cast<int>(rng.below(12)), static_cast<int>(rng.below(12))};
        CHECK(hop_distance(a, b) == hop_distance(b, a));
        CHECK(hop_distance(a, a) == 0);
        CHECK((hop_distance(a, b) == 0) == (a == b));
        CHECK(hop_distance(a, c) <= hop_distance(a, b) + hop_distance(b, c));
    }
}

TEST_CASE("neighborhood geometry") {
    Mesh mesh = Mesh::checkerboard(6, 6);

    SUBCASE("interior tile") {
        TileCoord c{3, 3};
        CHECK(mesh.neighborhood(c, 1).size() == 4);
        CHECK(mesh.neighborhood(c, 2).size() == 12);
        CHECK(mesh.neighborhood(c, 1) == brute_force_ball(mesh, c, 1));
        CHECK(mesh.neighborhood(c, 2) == brute_force_ball(mesh, c, 2));
    }
    SUBCASE("corner clipping") {
        CHECK(mesh.neighborhood({0, 0}, 1).size() == 2);
        CHECK(mesh.neighborhood({0, 0}, 1) == brute_force_ball(mesh, {0, 0}, 1));
    }
    SUBCASE("center excluded, bounds respected, nesting") {
        Rng rng(3);
        for (int i = 0; i < 100; ++i) {
            TileCoord c{static_cast<int>(rng.below(6)), static_cast<int>(rng.below(6))};
            int r1 = static_cast<int>(rng.below(3));
            int r2 = r1 + static_cast<int>(rng.below(3));
            auto n1 = mesh.neighborhood(c, r1);
            auto n2 = mesh.neighborhood(c, r2);
            CHECK(n1 == brute_force_ball(mesh, c, r1));
            for (const TileCoord& t : n1) {
                CHECK(t != c);
                CHECK(mesh.in_bounds(t));
                CHECK(std::find(n2.begin(), n2.end(), t) != n2.end());
            }
        }
    }
    SUBCASE("radius 0 is empty") { CHECK(mesh.neighborhood({3, 3}, 0).empty()); }
}

TEST_CASE("message latency formula") {
    LatencyModel lm;  // defaults: base 10, hop 2, flit 1, 16 B flits

    CHECK(lm.message_latency({0, 0}, {5, 0}, 16) == 21);  // 10 + 2*5 + 1
    CHECK(lm.message_latency({2, 2}, {2, 2}, 16) == lm.base_cycles + lm.per_flit_cycles);
    CHECK(lm.message_latency({2, 2}, {2, 2}, 0) ==
          lm.base_cycles + lm.per_flit_cycles);  // one flit minimum
    CHECK(lm.message_latency({0, 0}, {1, 0}, lm.flit_bytes + 1) == 10 + 2 + 2);  // two flits
    CHECK(lm.message_latency({0, 0}, {1, 0}, 4096) ==
          10 + 2 + (4096 + lm.flit_bytes - 1) / lm.flit_bytes);

    SUBCASE("monotone in hops and payload") {
        Rng rng(11);
        for (int i = 0; i < 200; ++i) {
            int d1 = static_cast<int>(rng.below(10));
            int d2 = d1 + static_cast<int>(rng.below(4));
            uint64_t p1 = rng.below(8192);
            uint64_t p2 = p1 + rng.below(4096);
            CHECK(lm.message_latency({0, 0}, {d1, 0}, p1) <=
                  lm.message_latency({0, 0}, {d2, 0}, p1));
            CHECK(lm.message_latency({0, 0}, {d1, 0}, p1) <=
                  lm.message_latency({0, 0}, {d1, 0}, p2));
        }
    }
}

TEST_CASE("default calibration: farthest/nearest round-trip ratio on 6x6") {
    Mesh mesh = Mesh::checkerboard(6, 6);
    LatencyModel lm;
    Cycles min_rt = ~0ULL, max_rt = 0;
    for (const TileCoord& cpu : mesh.cpu_tiles()) {
        for (const TileCoord& mem : mesh.mem_tiles()) {
            Cycles rt = lm.message_latency(cpu, mem, kHeaderBytes) + lm.mem_service_cycles +
                        lm.message_latency(mem, cpu, kHeaderBytes);
            min_rt = std::min(min_rt, rt);
            max_rt = std::max(max_rt, rt);
        }
    }
    CHECK(static_cast<double>(max_rt) / static_cast<double>(min_rt) >= 1.135);
}

TEST_CASE("checkerboard placement") {
    SUBCASE("2x2") {
        Mesh m = Mesh::checkerboard(2, 2);
        CHECK(m.cpu_tiles().size() == 2);
        CHECK(m.mem_tiles().size() == 2);
    }
    SUBCASE("6x6") {
        Mesh m = Mesh::checkerboard(6, 6);
        CHECK(m.cpu_tiles().size() == 18);
        CHECK(m.mem_tiles().size() == 18);
    }
    SUBCASE("3x3 parity count") {
        // count parity cells independently
        int even = 0;
        for (int y = 0; y < 3; ++y)
            for (int x = 0; x < 3; ++x)
                if ((x + y) % 2 == 0) ++even;
        Mesh m = Mesh::checkerboard(3, 3);
        CHECK(even == 5);
        CHECK(m.cpu_tiles().size() == 5);
        CHECK(m.mem_tiles().size() == 4);
    }
    SUBCASE("roles alternate") {
        Mesh m = Mesh::checkerboard(4, 4);
        CHECK(m.role({0, 0}) == Role::Cpu);
        CHECK(m.role({1, 0}) == Role::Mem);
        CHECK(m.role({1, 1}) == Role::Cpu);
    }
    SUBCASE("too small") { CHECK_THROWS_AS(Mesh::checkerboard(1, 5), ConfigError); }
}

TEST_CASE("explicit placement rows") {
    Mesh m = Mesh::from_rows({"CMC", "MCM"});
    CHECK(m.width() == 3);
    CHECK(m.height() == 2);
    CHECK(m.role({0, 0}) == Role::Cpu);
    CHECK(m.role({1, 0}) == Role::Mem);
    CHECK(m.role({0, 1}) == Role::Mem);

    CHECK_THROWS_AS(Mesh::from_rows({"CMC", "MC"}), ConfigError);   // ragged
    CHECK_THROWS_AS(Mesh::from_rows({"CXC"}), ConfigError);         // bad char
    CHECK_THROWS_AS(Mesh::from_rows({"CCC"}), ConfigError);         // no Mem
    CHECK_THROWS_AS(Mesh::from_rows({"MMM"}), ConfigError);         // no Cpu
}

TEST_CASE("mem tiles by distance: ring probe order") {
    Mesh m = Mesh::checkerboard(4, 4);
    std::vector<TileCoord> ring = m.mem_tiles_by_distance({0, 0});
    CHECK(ring.size() == m.mem_tiles().size());
    // non-decreasing distance, (y,x) ascending on ties
    for (size_t i = 1; i < ring.size(); ++i) {
        int da = hop_distance({0, 0}, ring[i - 1]);
        int db = hop_distance({0, 0}, ring[i]);
        CHECK(da <= db);
        if (da == db) CHECK(ring[i - 1] < ring[i]);
    }
    CHECK(ring[0] == TileCoord{1, 0});  // d=1, lowest (y,x)
    CHECK(ring[1] == TileCoord{0, 1});
}
