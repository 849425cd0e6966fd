#include "srslab/report/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include "srslab/errors.hpp"

namespace srslab::report {

namespace {

constexpr double kWidth = 960.0;
constexpr double kHeight = 540.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 24.0;
constexpr double kBottom = 52.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string num(double v, int precision = 2) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", precision, v);
    return buf;
}

std::string tick_label(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 6) {
    const double range = hi - lo;
    const double raw = range / std::max(1, target - 1);
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double step;
    if (frac < 1.5) step = 1.0;
    else if (frac < 3.5) step = 2.0;
    else if (frac < 7.5) step = 5.0;
    else step = 10.0;
    step *= mag;
    std::vector<double> ticks;
    double t = std::ceil(lo / step - 1e-9) * step;
    for (; t <= hi + step * 1e-9; t += step) ticks.push_back(t == 0.0 ? 0.0 : t);
    return ticks;
}

}  // namespace

std::string render_chart(const std::vector<ChartSeries>& series, const std::string& title,
                         const std::string& x_label, const std::string& y_label) {
    bool any = false;
    for (const auto& s : series) any = any || !s.points.empty();
    if (series.empty() || !any) throw UsageError("emit_chart: no data to plot");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) { xmin -= 1.0; xmax += 1.0; }
    if (ymax == ymin) { ymin -= 1.0; ymax += 1.0; }

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(kWidth, 0) +
           "\" height=\"" + num(kHeight, 0) + "\" viewBox=\"0 0 " + num(kWidth, 0) + " " +
           num(kHeight, 0) + "\">\n";
    svg += "<rect x=\"0\" y=\"0\" width=\"" + num(kWidth, 0) + "\" height=\"" + num(kHeight, 0) +
           "\" fill=\"white\"/>\n";
    svg += "<rect x=\"" + num(kLeft) + "\" y=\"" + num(kTop) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) + "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

    if (!title.empty())
        svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"16\" font-family=\"sans-serif\" "
               "font-size=\"14\" text-anchor=\"middle\">" + xml_escape(title) + "</text>\n";

    for (double t : nice_ticks(xmin, xmax)) {
        const double x = px(t);
        svg += "<line x1=\"" + num(x) + "\" y1=\"" + num(kTop + plot_h) + "\" x2=\"" + num(x) +
               "\" y2=\"" + num(kTop + plot_h + 5) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(x) + "\" y=\"" + num(kTop + plot_h + 18) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">" +
               tick_label(t) + "</text>\n";
    }
    for (double t : nice_ticks(ymin, ymax)) {
        const double y = py(t);
        svg += "<line x1=\"" + num(kLeft - 5) + "\" y1=\"" + num(y) + "\" x2=\"" + num(kLeft) +
               "\" y2=\"" + num(y) + "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">" +
               tick_label(t) + "</text>\n";
    }
    if (!x_label.empty())
        svg += "<text x=\"" + num(kLeft + plot_w / 2) + "\" y=\"" + num(kHeight - 12) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">" +
               xml_escape(x_label) + "</text>\n";
    if (!y_label.empty())
        svg += "<text x=\"16\" y=\"" + num(kTop + plot_h / 2) +
               "\" font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\" "
               "transform=\"rotate(-90 16 " + num(kTop + plot_h / 2) + ")\">" +
               xml_escape(y_label) + "</text>\n";

    for (size_t i = 0; i < series.size(); ++i) {
        if (series[i].points.empty()) continue;
        const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        std::string pts;
        for (const auto& [x, y] : series[i].points) {
            if (!pts.empty()) pts += ' ';
            pts += num(px(x)) + "," + num(py(y));
        }
        svg += "<polyline fill=\"none\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    }

    // legend, top-right inside the plot
    for (size_t i = 0; i < series.size(); ++i) {
        const char* color = kPalette[i % (sizeof kPalette / sizeof kPalette[0])];
        const double ly = kTop + 14.0 + 16.0 * static_cast<double>(i);
        const double lx = kLeft + plot_w - 170.0;
        svg += "<line x1=\"" + num(lx) + "\" y1=\"" + num(ly) + "\" x2=\"" + num(lx + 22) +
               "\" y2=\"" + num(ly) + "\" stroke=\"";
        svg += color;
        svg += "\" stroke-width=\"2\"/>\n";
        svg += "<text x=\"" + num(lx + 28) + "\" y=\"" + num(ly + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\">" + xml_escape(series[i].name) +
               "</text>\n";
    }

    svg += "</svg>\n";
    return svg;
}

void emit_chart(const std::vector<ChartSeries>& series, const std::filesystem::path& path,
                const std::string& title, const std::string& x_label, const std::string& y_label) {
    const std::string body = render_chart(series, title, x_label, y_label);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_chart: cannot open " + path.string());
    out << body;
    if (!out.good()) throw IoError("emit_chart: write failed for " + path.string());
}

}  // namespace srslab::report
