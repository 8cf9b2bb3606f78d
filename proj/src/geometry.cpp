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

#include "samsim/geometry.hpp"

#include <algorithm>

namespace samsim {

std::string to_string(const TileCoord& c) {
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

std::string to_string(const NodeRef& n) {
    return (n.role == Role::Cpu ? "C" : "M") + to_string(n.coord);
}

void LatencyModel::validate() const {
    if (per_hop_cycles < 1) throw ConfigError("per_hop_cycles must be >= 1");
    if (flit_bytes == 0) throw ConfigError("flit_bytes must be >= 1");
}

Mesh::Mesh(int width, int height, std::vector<Role> roles)
    : width_(width), height_(height), roles_(std::move(roles)) {
    if (width_ < 1 || height_ < 1)
        throw ConfigError("mesh dimensions must be positive");
    if (static_cast<int>(roles_.size()) != width_ * height_)
        throw ConfigError("placement size does not match mesh dimensions");
    for (int i = 0; i < tile_count(); ++i) {
        TileCoord c = coord(i);
        (roles_[i] == Role::Cpu ? cpu_tiles_ : mem_tiles_).push_back(c);
    }
    if (cpu_tiles_.empty() || mem_tiles_.empty())
        throw ConfigError("placement needs at least one Cpu and one Mem tile");
}

Mesh Mesh::checkerboard(int width, int height) {
    if (width < 2 || height < 2)
        throw ConfigError("checkerboard placement needs width and height >= 2");
    std::vector<Role> roles;
    roles.reserve(static_cast<size_t>(width) * height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            roles.push_back((x + y) % 2 == 0 ? Role::Cpu : Role::Mem);
    return Mesh(width, height, std::move(roles));
}

Mesh Mesh::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw ConfigError("placement map is empty");
    int height = static_cast<int>(rows.size());
    int width = static_cast<int>(rows[0].size());
    std::vector<Role> roles;
    roles.reserve(static_cast<size_t>(width) * height);
    for (const std::string& row : rows) {
        if (static_cast<int>(row.size()) != width)
            throw ConfigError("placement rows have unequal lengths");
        for (char ch : row) {
            if (ch == 'C')
                roles.push_back(Role::Cpu);
            else if (ch == 'M')
                roles.push_back(Role::Mem);
            else
                throw ConfigError(std::string("placement row has invalid character '") + ch + "'");
        }
    }
    return Mesh(width, height, std::move(roles));
}

std::vector<TileCoord> Mesh::neighborhood(const TileCoord& center, int radius) const {
    std::vector<TileCoord> out;
    for (int dy = -radius; dy <= radius; ++dy) {
        int rem = radius - std::abs(dy);
        for (int dx = -rem; dx <= rem; ++dx) {
            if (dx == 0 && dy == 0) continue;
            TileCoord t{center.x + dx, center.y + dy};
            if (in_bounds(t)) out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<TileCoord> Mesh::mem_tiles_by_distance(const TileCoord& origin) const {
    std::vector<TileCoord> out = mem_tiles_;
    std::stable_sort(out.begin(), out.end(), [&](const TileCoord& a, const TileCoord& b) {
        int da = hop_distance(origin, a);
        int db = hop_distance(origin, b);
        if (da != db) return da < db;
        return a < b;  // (y, x) ascending
    });
    return out;
}

}  // namespace samsim
