#include "focklab/output.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace focklab {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    meta_.emplace_back(key, value);
}

void CsvWriter::header(std::vector<std::string> columns) { columns_ = std::move(columns); }

void CsvWriter::row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) {
        throw std::invalid_argument("CsvWriter::row: cell count does not match the header");
    }
    rows_.push_back(std::move(cells));
}

std::string CsvWriter::str() const {
    std::ostringstream os;
    for (const auto& [k, v] : meta_) os << "# " << k << "=" << v << "\n";
    for (std::size_t i = 0; i < columns_.size(); ++i) os << (i ? "," : "") << columns_[i];
    os << "\n";
    for (const auto& r : rows_) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << "\n";
    }
    return os.str();
}

Json make_record(const std::string& experiment, Json inputs, Json results, bool with_timestamp) {
    Json meta;
    meta["tool"] = kToolName;
    meta["version"] = kToolVersion;
    meta["experiment"] = experiment;
    if (with_timestamp) {
        const auto now = std::chrono::system_clock::now();
        meta["timestamp"] = std::chrono::duration_cast<std::chrono::seconds>(
                                now.time_since_epoch())
                                .count();
    }
    Json record;
    record["meta"] = std::move(meta);
    record["inputs"] = std::move(inputs);
    record["results"] = std::move(results);
    return record;
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << content;
}

std::vector<double> parse_range(const std::string& text) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == ':') {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    parts.push_back(cur);
    if (parts.size() != 3 && parts.size() != 4) {
        throw std::invalid_argument("range must be lo:hi:count or lo:hi:count:log, got '" + text + "'");
    }
    const bool log_spacing = parts.size() == 4;
    if (log_spacing && parts[3] != "log") {
        throw std::invalid_argument("range spacing tag must be 'log', got '" + parts[3] + "'");
    }
    const double lo = std::stod(parts[0]);
    const double hi = std::stod(parts[1]);
    const int count = std::stoi(parts[2]);
    if (count < 1) throw std::invalid_argument("range count must be >= 1");
    if (log_spacing && !(lo > 0.0 && hi > 0.0)) {
        throw std::invalid_argument("log range endpoints must be positive");
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(count));
    if (count == 1) {
        out.push_back(lo);
        return out;
    }
    for (int i = 0; i < count; ++i) {
        const double f = static_cast<double>(i) / (count - 1);
        out.push_back(log_spacing ? lo * std::pow(hi / lo, f) : lo + f * (hi - lo));
    }
    return out;
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::string cur;
    for (char ch : text) {
        if (ch == ',') {
            out.push_back(std::stod(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    if (!cur.empty()) out.push_back(std::stod(cur));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

namespace {

constexpr int kW = 640, kH = 420;
constexpr int kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string fmt_coord(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<PlotSeries>& series,
                           double hline, bool with_hline) {
    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool first = true;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            if (first) {
                xmin = xmax = x;
                ymin = ymax = y;
                first = false;
            } else {
                xmin = std::min(xmin, x);
                xmax = std::max(xmax, x);
                ymin = std::min(ymin, y);
                ymax = std::max(ymax, y);
            }
        }
    }
    if (with_hline) {
        ymin = std::min(ymin, hline);
        ymax = std::max(ymax, hline);
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double ypad = 0.08 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const auto px = [&](double x) {
        return kLeft + (x - xmin) / (xmax - xmin) * (kW - kLeft - kRight);
    };
    const auto py = [&](double y) {
        return kH - kBottom - (y - ymin) / (ymax - ymin) * (kH - kTop - kBottom);
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
       << "</text>\n";

    // Axes with 5 ticks each.
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kH - kBottom << "\" x2=\"" << kW - kRight
       << "\" y2=\"" << kH - kBottom << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
       << kH - kBottom << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        os << "<text x=\"" << fmt_coord(px(fx)) << "\" y=\"" << kH - kBottom + 18
           << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_tick(fx) << "</text>\n";
        os << "<text x=\"" << kLeft - 8 << "\" y=\"" << fmt_coord(py(fy) + 4)
           << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_tick(fy) << "</text>\n";
    }
    os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
       << "transform=\"rotate(-90 16 " << kH / 2 << ")\">" << y_label << "</text>\n";

    if (with_hline) {
        os << "<line x1=\"" << kLeft << "\" y1=\"" << fmt_coord(py(hline)) << "\" x2=\""
           << kW - kRight << "\" y2=\"" << fmt_coord(py(hline))
           << "\" stroke=\"gray\" stroke-dasharray=\"6 4\"/>\n";
    }

    int legend_y = kTop + 4;
    for (const auto& s : series) {
        os << "<polyline fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : s.points) os << fmt_coord(px(x)) << "," << fmt_coord(py(y)) << " ";
        os << "\"/>\n";
        for (const auto& [x, y] : s.points) {
            os << "<circle cx=\"" << fmt_coord(px(x)) << "\" cy=\"" << fmt_coord(py(y))
               << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
        }
        if (!s.label.empty()) {
            os << "<text x=\"" << kW - kRight - 6 << "\" y=\"" << legend_y
               << "\" text-anchor=\"end\" font-size=\"11\" fill=\"" << s.color << "\">" << s.label
               << "</text>\n";
            legend_y += 14;
        }
    }
    os << "</svg>\n";
    return os.str();
}

std::string heatmap_svg(const HeatmapSpec& spec) {
    const std::size_t nx = spec.xs.size(), ny = spec.ys.size();
    if (nx == 0 || ny == 0 || spec.cells.size() != nx * ny) {
        throw std::invalid_argument("heatmap_svg: grid size mismatch");
    }
    const double cw = static_cast<double>(kW - kLeft - kRight) / static_cast<double>(nx);
    const double ch = static_cast<double>(kH - kTop - kBottom) / static_cast<double>(ny);

    const double xmin = spec.xs.front(), xmax = spec.xs.back();
    const double ymin = spec.ys.front(), ymax = spec.ys.back();
    const auto px = [&](double x) {
        return kLeft + (nx == 1 ? 0.5 : (x - xmin) / (xmax - xmin) * (nx - 1) + 0.5) * cw;
    };
    const auto py = [&](double y) {
        return kH - kBottom - (ny == 1 ? 0.5 : (y - ymin) / (ymax - ymin) * (ny - 1) + 0.5) * ch;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
       << "\" viewBox=\"0 0 " << kW << " " << kH << "\">\n";
    os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">"
       << spec.title << "</text>\n";

    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            const int code = spec.cells[iy * nx + ix];
            const std::string& color =
                spec.legend[static_cast<std::size_t>(code) % spec.legend.size()].second;
            const double cx = kLeft + static_cast<double>(ix) * cw;
            const double cy = kH - kBottom - static_cast<double>(iy + 1) * ch;
            os << "<rect x=\"" << fmt_coord(cx) << "\" y=\"" << fmt_coord(cy) << "\" width=\""
               << fmt_coord(cw) << "\" height=\"" << fmt_coord(ch) << "\" fill=\"" << color
               << "\"/>\n";
        }
    }

    if (spec.with_line) {
        os << "<line x1=\"" << fmt_coord(px(spec.line_a.first)) << "\" y1=\""
           << fmt_coord(py(spec.line_a.second)) << "\" x2=\"" << fmt_coord(px(spec.line_b.first))
           << "\" y2=\"" << fmt_coord(py(spec.line_b.second))
           << "\" stroke=\"black\" stroke-width=\"1.5\" stroke-dasharray=\"5 3\"/>\n";
    }

    // Edge tick labels.
    os << "<text x=\"" << kLeft << "\" y=\"" << kH - kBottom + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_tick(xmin) << "</text>\n";
    os << "<text x=\"" << kW - kRight << "\" y=\"" << kH - kBottom + 18
       << "\" text-anchor=\"middle\" font-size=\"11\">" << fmt_tick(xmax) << "</text>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << kH - kBottom
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_tick(ymin) << "</text>\n";
    os << "<text x=\"" << kLeft - 8 << "\" y=\"" << kTop + 10
       << "\" text-anchor=\"end\" font-size=\"11\">" << fmt_tick(ymax) << "</text>\n";
    os << "<text x=\"" << kW / 2 << "\" y=\"" << kH - 12
       << "\" text-anchor=\"middle\" font-size=\"12\">" << spec.x_label << "</text>\n";
    os << "<text x=\"16\" y=\"" << kH / 2 << "\" text-anchor=\"middle\" font-size=\"12\" "
       << "transform=\"rotate(-90 16 " << kH / 2 << ")\">" << spec.y_label << "</text>\n";

    int legend_y = kTop + 4;
    for (const auto& [label, color] : spec.legend) {
        os << "<rect x=\"" << kW - kRight - 110 << "\" y=\"" << legend_y - 9
           << "\" width=\"10\" height=\"10\" fill=\"" << color << "\"/>\n";
        os << "<text x=\"" << kW - kRight - 96 << "\" y=\"" << legend_y
           << "\" font-size=\"11\">" << label << "</text>\n";
        legend_y += 14;
    }
    os << "</svg>\n";
    return os.str();
}

} // namespace focklab
