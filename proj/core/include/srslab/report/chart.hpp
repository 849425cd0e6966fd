#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace srslab::report {

struct ChartSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

// Standalone SVG 1.1 line chart: axes, tick labels, legend, one polyline
// per series. Output is a deterministic function of the input; the data
// extent maps affinely onto the plot rectangle.
void emit_chart(const std::vector<ChartSeries>& series, const std::filesystem::path& path,
                const std::string& title = "", const std::string& x_label = "",
                const std::string& y_label = "");

std::string render_chart(const std::vector<ChartSeries>& series, const std::string& title = "",
                         const std::string& x_label = "", const std::string& y_label = "");

}  // namespace srslab::report
