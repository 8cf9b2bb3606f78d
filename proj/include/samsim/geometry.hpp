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
#include <stdexcept>
#include <string>
#include <vector>

namespace samsim {

using Cycles = uint64_t;

struct TileCoord {
    int x = 0;  // column
    int y = 0;  // row

    friend bool operator==(const TileCoord&, const TileCoord&) = default;
    // scan order: row-major (y, then x)
    friend auto operator<=>(const TileCoord& a, const TileCoord& b) {
        if (a.y != b.y) return a.y <=> b.y;
        return a.x <=> b.x;
    }
};

enum class Role : uint8_t { Cpu, Mem };

struct NodeRef {
    TileCoord coord;
    Role role = Role::Cpu;

    friend bool operator==(const NodeRef&, const NodeRef&) = default;
    friend auto operator<=>(const NodeRef& a, const NodeRef& b) {
        if (a.coord != b.coord) return a.coord <=> b.coord;
        return a.role <=> b.role;
    }
};

std::string to_string(const TileCoord& c);
std::string to_string(const NodeRef& n);

// XY-routed mesh: Manhattan metric.
inline int hop_distance(const TileCoord& a, const TileCoord& b) {
    return std::abs(a.x - b.x) + std::abs(a.y - b.y);
}

struct LatencyModel {
    Cycles base_cycles = 10;       // injection + ejection
    Cycles per_hop_cycles = 2;
    Cycles per_flit_cycles = 1;
    uint64_t flit_bytes = 1024;    // burst granularity; control messages fit one flit
    Cycles mem_service_cycles = 32;

    void validate() const;

    // base + hops + payload serialization; an empty payload still occupies
    // one flit.
    Cycles message_latency(const TileCoord& src, const TileCoord& dst,
                           uint64_t payload_bytes) const {
        uint64_t flits = (payload_bytes + flit_bytes - 1) / flit_bytes;
        if (flits == 0) flits = 1;
        return base_cycles +
               per_hop_cycles * static_cast<Cycles>(hop_distance(src, dst)) +
               per_flit_cycles * flits;
    }
};

// Fixed tile-role assignment for one simulation run.
class Mesh {
public:
    Mesh(int width, int height, std::vector<Role> roles);

    // Checkerboard: Cpu on even (x+y), Mem on odd. Requires width,height >= 2.
    static Mesh checkerboard(int width, int height);
    // Rows of 'C'/'M' characters, row y = 0 first.
    static Mesh from_rows(const std::vector<std::string>& rows);

    int width() const { return width_; }
    int height() const { return height_; }
    int tile_count() const { return width_ * height_; }

    bool in_bounds(const TileCoord& c) const {
        return c.x >= 0 && c.x < width_ && c.y >= 0 && c.y < height_;
    }
    int linear(const TileCoord& c) const { return c.y * width_ + c.x; }
    TileCoord coord(int linear_index) const {
        return TileCoord{linear_index % width_, linear_index / width_};
    }

    Role role(const TileCoord& c) const { return roles_[linear(c)]; }
    NodeRef node(const TileCoord& c) const { return NodeRef{c, role(c)}; }

    const std::vector<TileCoord>& cpu_tiles() const { return cpu_tiles_; }
    const std::vector<TileCoord>& mem_tiles() const { return mem_tiles_; }

    // All tiles t with 1 <= hop_distance(center, t) <= radius, clipped to the
    // mesh, in scan order. Excludes the center.
    std::vector<TileCoord> neighborhood(const TileCoord& center, int radius) const;

    // Memory tiles ordered by (hop distance from origin, y, x): the probe
    // order of the expanding-ring allocation.
    std::vector<TileCoord> mem_tiles_by_distance(const TileCoord& origin) const;

    int max_hop_distance() const { return (width_ - 1) + (height_ - 1); }

private:
    int width_;
    int height_;
    std::vector<Role> roles_;
    std::vector<TileCoord> cpu_tiles_;
    std::vector<TileCoord> mem_tiles_;
};

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace samsim
