#include "srslab/report/table.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "srslab/errors.hpp"

namespace srslab::report {

std::string format_sig6(double v) {
    char buf[64];
    // '#' keeps trailing zeros so 3.3 renders as "3.30000"
    std::snprintf(buf, sizeof buf, "%#.6g", v);
    std::string s(buf);
    if (!s.empty() && s.back() == '.') s.pop_back();
    return s;
}

namespace {

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

std::string render_csv(const ResultTable& table) {
    std::string out = "variant,metric,mean,ci_half_width,n,attain_count\r\n";
    for (const auto& r : table.rows) {
        out += csv_escape(r.variant);
        out += ',';
        out += csv_escape(r.metric);
        out += ',';
        out += r.mean ? format_sig6(*r.mean) : "-";
        out += ',';
        out += r.ci_half_width ? format_sig6(*r.ci_half_width) : "-";
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += std::to_string(r.attain);
        out += "\r\n";
    }
    return out;
}

std::string render_json(const ResultTable& table) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) {
        nlohmann::ordered_json row;
        row["variant"] = r.variant;
        row["metric"] = r.metric;
        // re-parsing the 6-sig-digit text keeps CSV and JSON numerically identical
        if (r.mean) row["mean"] = std::stod(format_sig6(*r.mean));
        else row["mean"] = nullptr;
        if (r.ci_half_width) row["ci_half_width"] = std::stod(format_sig6(*r.ci_half_width));
        else row["ci_half_width"] = nullptr;
        row["n"] = r.n;
        row["attain_count"] = r.attain;
        arr.push_back(std::move(row));
    }
    return arr.dump(2) + "\n";
}

}  // namespace

std::string render_table(const ResultTable& table, TableFormat format) {
    if (table.rows.empty()) throw UsageError("emit_table: empty table");
    return format == TableFormat::csv ? render_csv(table) : render_json(table);
}

void emit_table(const ResultTable& table, TableFormat format, const std::filesystem::path& path) {
    const std::string body = render_table(table, format);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("emit_table: cannot open " + path.string());
    out << body;
    if (!out.good()) throw IoError("emit_table: write failed for " + path.string());
}

}  // namespace srslab::report
