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

#include <cmath>
#include <cstdint>

namespace samsim {

// splitmix64 step; also used standalone as a mixing function.
inline uint64_t mix64(uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix64(uint64_t a, uint64_t b) { return mix64(a ^ mix64(b)); }

// Deterministic PRNG with fully pinned-down output. std:: distributions are
// implementation-defined, so every draw is spelled out here; byte-identical
// results are part of the file-format and CSV contracts.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, n). Lemire reduction without rejection; the bias is
    // below 2^-32 for the small ranges used here.
    uint64_t below(uint64_t n) {
        return static_cast<uint64_t>(
            (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
    }

    // Uniform in [0, 1) with 53 random bits.
    double real01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    bool chance(double p) { return real01() < p; }

    // Geometric on {0, 1, ...} with the given mean, by inverse transform.
    uint64_t geometric(double mean) {
        if (mean <= 0.0) return 0;
        double p = 1.0 / (mean + 1.0);
        double u = real01();
        double k = std::floor(std::log1p(-u) / std::log1p(-p));
        if (k < 0.0) k = 0.0;
        if (k > 1e15) k = 1e15;
        return static_cast<uint64_t>(k);
    }

private:
    uint64_t state_;
};

}  // namespace samsim
