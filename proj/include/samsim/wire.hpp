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

namespace samsim {

// Nominal wire sizes, used for the latency model only. Header-sized messages
// fit in one default flit.
inline constexpr uint64_t kHeaderBytes = 16;
inline constexpr uint64_t kProposeBytes = 32;
inline constexpr uint64_t kTableUpdateBytes = 32;

}  // namespace samsim
