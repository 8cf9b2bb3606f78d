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

#include "samsim/trace.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "samsim/rng.hpp"
#include "samsim/util.hpp"

namespace samsim {

uint8_t write_value(uint64_t task_uid, size_t record_index) {
    return static_cast<uint8_t>(mix64(task_uid, static_cast<uint64_t>(record_index)) & 0xFF);
}

std::string generate_trace_text(const TraceSpec& spec, uint64_t page_size, uint64_t seed) {
    Rng rng(seed);
    std::ostringstream out;
    out << "SAMTRACE v1 " << spec.name << "\n";
    uint64_t region_bytes = static_cast<uint64_t>(spec.pages_per_phase) * page_size;
    for (uint32_t phase = 0; phase < spec.n_phases; ++phase) {
        uint32_t handle = phase + 1;
        out << rng.geometric(spec.mean_delta) << " A " << handle << " "
            << spec.pages_per_phase << "\n";
        for (uint32_t i = 0; i < spec.accesses_per_phase; ++i) {
            Cycles delta = rng.geometric(spec.mean_delta);
            bool is_write = rng.chance(spec.write_ratio);
            uint64_t offset = rng.below(region_bytes);
            out << delta << " " << (is_write ? "W" : "R") << " " << handle << " "
                << offset << "\n";
        }
        out << rng.geometric(spec.mean_delta) << " F " << handle << "\n";
    }
    out << rng.geometric(spec.mean_delta) << " E\n";
    return out.str();
}

void generate_trace_file(const TraceSpec& spec, uint64_t page_size, uint64_t seed,
                         const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace file '" + path + "'");
    out << generate_trace_text(spec, page_size, seed);
}

namespace {

uint64_t parse_field(const std::string& tok, const char* what, int line) {
    try {
        size_t pos = 0;
        uint64_t v = std::stoull(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw TraceFormatError(std::string("bad ") + what + " '" + tok + "'", line);
    }
}

}  // namespace

Trace parse_trace(std::istream& in, uint64_t page_size) {
    Trace trace;
    std::string line;
    int lineno = 0;

    if (!std::getline(in, line)) throw TraceFormatError("empty trace file", 1);
    ++lineno;
    {
        std::vector<std::string> head = split_ws(strip_comment(line));
        if (head.size() < 2 || head[0] != "SAMTRACE" || head[1] != "v1")
            throw TraceFormatError("bad header, expected 'SAMTRACE v1 <name>'", lineno);
        trace.name = head.size() > 2 ? head[2] : "";
    }

    std::map<uint32_t, uint32_t> live;  // handle -> n_pages
    std::set<uint32_t> used;
    bool ended = false;

    while (std::getline(in, line)) {
        ++lineno;
        std::string text = strip_comment(line);
        if (text.empty()) continue;
        if (ended) throw TraceFormatError("record after E", lineno);

        std::vector<std::string> tok = split_ws(text);
        TraceRecord rec;
        rec.delta = parse_field(tok[0], "delta", lineno);
        if (tok.size() < 2) throw TraceFormatError("missing op", lineno);
        const std::string& op = tok[1];

        if (op == "A") {
            if (tok.size() != 4) throw TraceFormatError("A expects '<delta> A <handle> <n_pages>'", lineno);
            rec.op = TraceOp::Alloc;
            rec.handle = static_cast<uint32_t>(parse_field(tok[2], "handle", lineno));
            rec.n_pages = static_cast<uint32_t>(parse_field(tok[3], "n_pages", lineno));
            if (rec.n_pages == 0) throw TraceFormatError("n_pages must be >= 1", lineno);
            if (used.contains(rec.handle))
                throw TraceFormatError("handle " + std::to_string(rec.handle) + " reused", lineno);
            used.insert(rec.handle);
            live.emplace(rec.handle, rec.n_pages);
        } else if (op == "R" || op == "W") {
            if (tok.size() != 4) throw TraceFormatError("R/W expects '<delta> R|W <handle> <offset>'", lineno);
            rec.op = op == "R" ? TraceOp::Read : TraceOp::Write;
            rec.handle = static_cast<uint32_t>(parse_field(tok[2], "handle", lineno));
            rec.offset = parse_field(tok[3], "offset", lineno);
            auto it = live.find(rec.handle);
            if (it == live.end())
                throw TraceFormatError("use of unallocated handle " + std::to_string(rec.handle), lineno);
            if (rec.offset >= static_cast<uint64_t>(it->second) * page_size)
                throw TraceFormatError("offset " + std::to_string(rec.offset) + " out of range", lineno);
        } else if (op == "F") {
            if (tok.size() != 3) throw TraceFormatError("F expects '<delta> F <handle>'", lineno);
            rec.op = TraceOp::Free;
            rec.handle = static_cast<uint32_t>(parse_field(tok[2], "handle", lineno));
            if (!live.contains(rec.handle))
                throw TraceFormatError("free of unallocated handle " + std::to_string(rec.handle), lineno);
            live.erase(rec.handle);
        } else if (op == "E") {
            if (tok.size() != 2) throw TraceFormatError("E expects '<delta> E'", lineno);
            rec.op = TraceOp::End;
            ended = true;
        } else {
            throw TraceFormatError("unknown op '" + op + "'", lineno);
        }
        trace.records.push_back(rec);
    }
    if (!ended) throw TraceFormatError("missing E record", lineno + 1);
    return trace;
}

Trace load_trace_file(const std::string& path, uint64_t page_size) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open trace file '" + path + "'");
    return parse_trace(in, page_size);
}

}  // namespace samsim
