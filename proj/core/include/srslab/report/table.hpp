#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace srslab::report {

struct ResultRow {
    std::string variant;
    std::string metric;
    std::optional<double> mean;
    std::optional<double> ci_half_width;
    int n = 0;
    int attain = 0;
};

// One row per (variant, metric).
struct ResultTable {
    std::vector<ResultRow> rows;
};

enum class TableFormat { csv, json };

// 6 significant digits with trailing zeros kept ("3.30000", "1.66000").
std::string format_sig6(double v);

// CSV: RFC-4180 header + rows; JSON: array of row objects. Numeric cells
// carry 6 significant digits in both formats; absent values render as "-"
// in CSV and null in JSON.
void emit_table(const ResultTable& table, TableFormat format, const std::filesystem::path& path);

std::string render_table(const ResultTable& table, TableFormat format);

}  // namespace srslab::report
