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

#include <string>
#include <utility>
#include <vector>

namespace samsim {

std::string trim(const std::string& s);
// Drops a trailing '#' comment, then trims.
std::string strip_comment(const std::string& line);
// "key = value" -> {key, value}; missing '=' -> {"", ""}.
std::pair<std::string, std::string> split_key_value(const std::string& text);
// Comma-separated list, each element trimmed, empties dropped.
std::vector<std::string> split_list(const std::string& text);
std::vector<std::string> split_ws(const std::string& text);

}  // namespace samsim
