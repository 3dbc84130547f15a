#pragma once

#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace focklab {

inline constexpr const char* kToolName = "focklab";
inline constexpr const char* kToolVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Deterministic formatting: shortest representation that round-trips is not
// needed for CSV; a fixed %.12g keeps files diff-friendly.
std::string format_double(double v);

// CSV with '#'-prefixed metadata comment lines before the header row.
class CsvWriter {
public:
    void meta(const std::string& key, const std::string& value);
    void header(std::vector<std::string> columns);
    void row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::vector<std::pair<std::string, std::string>> meta_;
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

// {meta, inputs, results}; the timestamp is opt-in so identical configs
// produce byte-identical files.
Json make_record(const std::string& experiment, Json inputs, Json results, bool with_timestamp);

void write_text_file(const std::string& path, const std::string& content);

// "lo:hi:count" (linear) or "lo:hi:count:log" (geometric).
std::vector<double> parse_range(const std::string& text);

// Comma-separated list of reals.
std::vector<double> parse_list(const std::string& text);

struct PlotSeries {
    std::string label;
    std::string color;
    std::vector<std::pair<double, double>> points;
};

// Static line chart; no scripting, fixed size, deterministic text.
std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<PlotSeries>& series,
                           double hline = 0.0, bool with_hline = false);

// Heatmap over a rectangular grid of class codes, with a legend and an
// optional straight overlay line given by two endpoints in data coordinates.
struct HeatmapSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<double> xs;
    std::vector<double> ys;
    std::vector<int> cells; // row-major, ys outer, xs inner
    std::vector<std::pair<std::string, std::string>> legend; // label, color per class code
    bool with_line = false;
    std::pair<double, double> line_a{0.0, 0.0};
    std::pair<double, double> line_b{0.0, 0.0};
};

std::string heatmap_svg(const HeatmapSpec& spec);

} // namespace focklab
