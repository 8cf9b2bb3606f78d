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

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace samsim {

struct ReportError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of a named column; throws ReportError naming the column.
    size_t column(const std::string& name) const;
};

CsvTable parse_csv(std::istream& in);

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;  // sorted by x
};

// Deterministic standalone SVG line chart.
std::string render_line_chart(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<Series>& series);

// Renders the sweep charts (committed/messages vs threshold and emission
// period, economic efficiency per radius) plus derived.csv with the runtime
// ratio; returns the written file paths. Empty CSV or a missing column is an
// error and writes nothing.
std::vector<std::string> render_report(std::istream& csv_in, const std::string& out_dir);
std::vector<std::string> render_report_file(const std::string& csv_path,
                                            const std::string& out_dir);

}  // namespace samsim
