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

#include "samsim/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "samsim/util.hpp"

namespace samsim {

size_t CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw ReportError("missing column '" + name + "'");
}

CsvTable parse_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::string field;
        std::istringstream ls(line);
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.push_back("");
        if (first) {
            table.header = std::move(fields);
            first = false;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

namespace {

std::string fmt(double v, const char* f = "%.6g") {
    char buf[64];
    std::snprintf(buf, sizeof(buf), f, v);
    return buf;
}

constexpr const char* kPalette[] = {"#1f6feb", "#d1242f", "#1a7f37", "#9a6700",
                                    "#8250df", "#bf3989", "#57606a", "#0a3069"};

struct ChartSpec {
    std::string file;
    std::string title;
    std::string xcol;
    std::string ycol;  // empty -> vote_round + migration sum
    std::string xlabel;
    std::string ylabel;
    std::vector<std::string> series_cols;
    std::string filter_col;    // optional row filter
    std::string filter_value;
};

double parse_num(const std::string& s) {
    if (s.empty()) return 0.0;
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        return 0.0;
    }
}

}  // namespace

std::string render_line_chart(const std::string& title, const std::string& xlabel,
                              const std::string& ylabel, const std::vector<Series>& series) {
    constexpr double W = 720, H = 460;
    constexpr double ml = 80, mr = 180, mt = 48, mb = 56;
    const double pw = W - ml - mr, ph = H - mt - mb;

    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    bool any = false;
    for (const Series& s : series) {
        for (auto [x, y] : s.points) {
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x); xmax = std::max(xmax, x);
            ymin = std::min(ymin, y); ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    // pad the y range a little; keep zero visible when close
    double ypad = (ymax - ymin) * 0.05;
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto py = [&](double y) { return mt + ph - (y - ymin) / (ymax - ymin) * ph; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
        << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
    svg << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
    svg << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"15\" font-weight=\"bold\">" << title
        << "</text>\n";

    // axes and ticks
    svg << "<g stroke=\"#333\" stroke-width=\"1\">\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\"" << ml + pw
        << "\" y2=\"" << mt + ph << "\"/>\n";
    svg << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
        << mt + ph << "\"/>\n";
    svg << "</g>\n";
    svg << "<g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
    for (int i = 0; i <= 5; ++i) {
        double xv = xmin + (xmax - xmin) * i / 5.0;
        double yv = ymin + (ymax - ymin) * i / 5.0;
        svg << "<line x1=\"" << fmt(px(xv), "%.2f") << "\" y1=\"" << mt + ph << "\" x2=\""
            << fmt(px(xv), "%.2f") << "\" y2=\"" << mt + ph + 5
            << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << fmt(px(xv), "%.2f") << "\" y=\"" << mt + ph + 18
            << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
        svg << "<line x1=\"" << ml - 5 << "\" y1=\"" << fmt(py(yv), "%.2f") << "\" x2=\""
            << ml << "\" y2=\"" << fmt(py(yv), "%.2f") << "\" stroke=\"#333\"/>\n";
        svg << "<text x=\"" << ml - 8 << "\" y=\"" << fmt(py(yv) + 4, "%.2f")
            << "\" text-anchor=\"end\">" << fmt(yv) << "</text>\n";
    }
    svg << "<text x=\"" << ml + pw / 2 << "\" y=\"" << H - 14
        << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n";
    svg << "<text x=\"20\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 "
        << mt + ph / 2 << ")\">" << ylabel << "</text>\n";
    svg << "</g>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
        svg << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\" points=\"";
        for (auto [x, y] : series[i].points)
            svg << fmt(px(x), "%.2f") << "," << fmt(py(y), "%.2f") << " ";
        svg << "\"/>\n";
        for (auto [x, y] : series[i].points) {
            svg << "<circle cx=\"" << fmt(px(x), "%.2f") << "\" cy=\"" << fmt(py(y), "%.2f")
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        }
        double ly = mt + 16 + 18 * static_cast<double>(i);
        svg << "<line x1=\"" << ml + pw + 12 << "\" y1=\"" << ly - 4 << "\" x2=\""
            << ml + pw + 34 << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << ml + pw + 40 << "\" y=\"" << ly
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << series[i].label
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

namespace {

std::vector<Series> build_series(const CsvTable& t, const ChartSpec& spec) {
    size_t status_col = t.column("status");
    size_t xcol = t.column(spec.xcol);
    size_t ycol1 = spec.ycol.empty() ? t.column("msgs_vote_round") : t.column(spec.ycol);
    size_t ycol2 = spec.ycol.empty() ? t.column("msgs_migration") : ycol1;
    std::vector<size_t> scols;
    for (const std::string& name : spec.series_cols) scols.push_back(t.column(name));
    size_t fcol = spec.filter_col.empty() ? 0 : t.column(spec.filter_col);

    // label -> x -> (sum, n); duplicate x values are averaged
    std::map<std::string, std::map<double, std::pair<double, int>>> agg;
    for (const auto& row : t.rows) {
        if (row[status_col] != "ok") continue;
        if (!spec.filter_col.empty() && row[fcol] != spec.filter_value) continue;
        std::string label;
        for (size_t i = 0; i < scols.size(); ++i) {
            if (i) label += " ";
            label += spec.series_cols[i] + "=" + row[scols[i]];
        }
        double x = parse_num(row[xcol]);
        double y = parse_num(row[ycol1]);
        if (spec.ycol.empty()) y += parse_num(row[ycol2]);
        auto& cell = agg[label][x];
        cell.first += y;
        cell.second += 1;
    }

    std::vector<Series> out;
    for (const auto& [label, xs] : agg) {
        Series s;
        s.label = label;
        for (const auto& [x, sum_n] : xs)
            s.points.emplace_back(x, sum_n.first / sum_n.second);
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

std::vector<std::string> render_report(std::istream& csv_in, const std::string& out_dir) {
    CsvTable table = parse_csv(csv_in);
    if (table.header.empty() || table.rows.empty())
        throw ReportError("empty CSV: nothing to report");

    // validate the full contract schema up front
    for (const char* col :
         {"seed", "mesh_w", "mesh_h", "threshold", "emission_period", "monitor_period",
          "radius", "optimizer", "cost_factor", "makespan_on", "makespan_off", "ee_cycles",
          "n_propositions", "n_committed", "n_aborted", "msgs_status", "msgs_vote_round",
          "msgs_migration", "n_accesses", "mean_rt_cycles", "status"})
        table.column(col);

    std::vector<ChartSpec> charts = {
        {"committed_vs_threshold.svg", "Executed optimizations vs. counter threshold",
         "threshold", "n_committed", "threshold", "executed optimizations",
         {"emission_period", "radius"}, "", ""},
        {"messages_vs_threshold.svg", "Optimization-process messages vs. counter threshold",
         "threshold", "", "threshold", "vote + migration messages",
         {"emission_period", "radius"}, "", ""},
        {"committed_vs_emission.svg", "Executed optimizations vs. emission period",
         "emission_period", "n_committed", "emission period (cycles)",
         "executed optimizations", {"threshold", "radius"}, "", ""},
        {"messages_vs_emission.svg", "Optimization-process messages vs. emission period",
         "emission_period", "", "emission period (cycles)", "vote + migration messages",
         {"threshold", "radius"}, "", ""},
    };
    size_t radius_col = table.column("radius");
    std::vector<std::string> radii;
    for (const auto& row : table.rows)
        if (std::find(radii.begin(), radii.end(), row[radius_col]) == radii.end())
            radii.push_back(row[radius_col]);
    std::sort(radii.begin(), radii.end());
    for (const std::string& r : radii) {
        charts.push_back({"ee_radius" + r + ".svg",
                          "Economic efficiency, neighborhood radius " + r, "threshold",
                          "ee_cycles", "threshold", "economic efficiency (cycles)",
                          {"emission_period"}, "radius", r});
    }

    std::filesystem::create_directories(out_dir);
    std::vector<std::string> written;
    for (const ChartSpec& spec : charts) {
        std::vector<Series> series = build_series(table, spec);
        if (series.empty()) continue;  // nothing passed the filter
        std::string path = out_dir + "/" + spec.file;
        std::ofstream out(path, std::ios::binary);
        if (!out) throw ReportError("cannot write '" + path + "'");
        out << render_line_chart(spec.title, spec.xlabel, spec.ylabel, series);
        written.push_back(path);
    }

    // derived.csv: the source rows plus the runtime ratio
    size_t on_col = table.column("makespan_on");
    size_t off_col = table.column("makespan_off");
    std::string derived_path = out_dir + "/derived.csv";
    std::ofstream derived(derived_path, std::ios::binary);
    if (!derived) throw ReportError("cannot write '" + derived_path + "'");
    for (size_t i = 0; i < table.header.size(); ++i)
        derived << table.header[i] << ',';
    derived << "ee_ratio\n";
    for (const auto& row : table.rows) {
        for (const auto& field : row) derived << field << ',';
        double on = parse_num(row[on_col]);
        double off = parse_num(row[off_col]);
        derived << fmt(on > 0 ? off / on : 0.0, "%.6f") << "\n";
    }
    written.push_back(derived_path);
    return written;
}

std::vector<std::string> render_report_file(const std::string& csv_path,
                                            const std::string& out_dir) {
    std::ifstream in(csv_path);
    if (!in) throw ReportError("cannot open CSV '" + csv_path + "'");
    return render_report(in, out_dir);
}

}  // namespace samsim
