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

#include "samsim/rng.hpp"
#include "samsim/trace.hpp"

using namespace samsim;

namespace {

Trace parse_text(const std::string& text, uint64_t page_size = 4096) {
    std::istringstream in(text);
    return parse_trace(in, page_size);
}

int error_line(const std::string& text, uint64_t page_size = 4096) {
    try {
        parse_text(text, page_size);
    } catch (const TraceFormatError& e) {
        return e.line;
    }
    return -1;
}

// re-emit records in the file format; round-trip check against the generator
std::string serialize(const Trace& t) {
    std::ostringstream out;
    out << "SAMTRACE v1 " << t.name << "\n";
    for (const TraceRecord& r : t.records) {
        out << r.delta << " ";
        switch (r.op) {
            case TraceOp::Alloc: out << "A " << r.handle << " " << r.n_pages; break;
            case TraceOp::Read: out << "R " << r.handle << " " << r.offset; break;
            case TraceOp::Write: out << "W " << r.handle << " " << r.offset; break;
            case TraceOp::Free: out << "F " << r.handle; break;
            case TraceOp::End: out << "E"; break;
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace

TEST_CASE("minimal generated trace") {
    TraceSpec spec{"mini", 1, 1, 1, 0.0, 10.0};
    std::string text = generate_trace_text(spec, 4096, 1);
    Trace t = parse_text(text);
    CHECK(t.name == "mini");
    REQUIRE(t.records.size() == 4);
    CHECK(t.records[0].op == TraceOp::Alloc);
    CHECK(t.records[1].op == TraceOp::Read);  // write_ratio 0 -> reads only
    CHECK(t.records[2].op == TraceOp::Free);
    CHECK(t.records[3].op == TraceOp::End);
}

TEST_CASE("generation is deterministic in (spec, seed)") {
    TraceSpec spec{"d", 3, 4, 50, 0.3, 8.0};
    CHECK(generate_trace_text(spec, 4096, 42) == generate_trace_text(spec, 4096, 42));
    CHECK(generate_trace_text(spec, 4096, 42) != generate_trace_text(spec, 4096, 43));
}

TEST_CASE("write_ratio 1 emits no reads") {
    TraceSpec spec{"w", 2, 2, 30, 1.0, 5.0};
    Trace t = parse_text(generate_trace_text(spec, 4096, 9));
    for (const TraceRecord& r : t.records) CHECK(r.op != TraceOp::Read);
}

TEST_CASE("generate -> parse -> serialize round-trips byte-identically") {
    Rng rng(123);
    for (int i = 0; i < 25; ++i) {
        TraceSpec spec;
        spec.name = "t" + std::to_string(i);
        spec.n_phases = 1 + static_cast<uint32_t>(rng.below(4));
        spec.pages_per_phase = 1 + static_cast<uint32_t>(rng.below(8));
        spec.accesses_per_phase = 1 + static_cast<uint32_t>(rng.below(40));
        spec.write_ratio = rng.real01();
        spec.mean_delta = 1.0 + rng.real01() * 20.0;
        std::string text = generate_trace_text(spec, 4096, rng.next_u64());
        Trace t = parse_text(text);
        CHECK(serialize(t) == text);
        CHECK(t.records.back().op == TraceOp::End);
    }
}

TEST_CASE("generated traces always satisfy handle discipline") {
    // the parser enforces it; generation must never produce a rejected file
    Rng rng(77);
    for (int i = 0; i < 50; ++i) {
        TraceSpec spec{"h", 1 + static_cast<uint32_t>(rng.below(5)),
                       1 + static_cast<uint32_t>(rng.below(6)),
                       1 + static_cast<uint32_t>(rng.below(60)), rng.real01(),
                       1.0 + rng.real01() * 10.0};
        CHECK_NOTHROW(parse_text(generate_trace_text(spec, 4096, rng.next_u64())));
    }
}

TEST_CASE("parse: valid minimal file") {
    Trace t = parse_text("SAMTRACE v1 demo\n0 A 1 2\n5 W 1 4096\n0 R 1 4096\n0 F 1\n0 E\n");
    CHECK(t.name == "demo");
    CHECK(t.records.size() == 5);
    CHECK(t.records[1].offset == 4096);
}

TEST_CASE("parse: comments and blank lines") {
    Trace t = parse_text("SAMTRACE v1 c\n# header comment\n\n0 A 1 1\n0 F 1 # inline\n0 E\n");
    CHECK(t.records.size() == 3);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK(error_line("BADHEADER\n0 E\n") == 1);
    CHECK(error_line("SAMTRACE v1 x\n0 R 1 0\n0 E\n") == 2);       // use before A
    CHECK(error_line("SAMTRACE v1 x\n0 A 1 1\n0 Q 1\n0 E\n") == 3);  // unknown op
    CHECK(error_line("SAMTRACE v1 x\n0 A 1 1\n0 R 1 4096\n0 E\n") == 3);  // offset range
    CHECK(error_line("SAMTRACE v1 x\n0 A 1 1\n0 F 2\n0 E\n") == 3);  // free unknown
    CHECK(error_line("SAMTRACE v1 x\n0 A 1 1\n0 F 1\n") == 4);       // missing E
    CHECK(error_line("SAMTRACE v1 x\n0 A 1 1\n0 F 1\n0 A 1 1\n0 E\n") == 4);  // reuse
    CHECK(error_line("SAMTRACE v1 x\n0 E\n0 A 1 1\n") == 3);         // record after E
    CHECK(error_line("SAMTRACE v1 x\nzz A 1 1\n0 E\n") == 2);        // bad delta
}

TEST_CASE("write values are deterministic and task-specific") {
    CHECK(write_value(1, 5) == write_value(1, 5));
    bool differs = write_value(1, 5) != write_value(2, 5) ||
                   write_value(1, 6) != write_value(2, 6) ||
                   write_value(1, 7) != write_value(2, 7);
    CHECK(differs);
}
